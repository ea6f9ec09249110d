#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

struct EnrichmentConfig {
  int max_head_tokens = 3; // heads longer than this after cleaning are dropped
  std::set<std::string> excluded_pronouns{"i"};
  std::set<std::string> articles{"a", "an", "the"};
  std::set<std::string> genitive_markers{"'s", "’s", "s'"};
  std::string tag_open = "<b_crf>";
  std::string tag_close = "<e_crf>";
  int min_chain_size = 2; // chains below this size carry no markup
  HeadRule head_rule = HeadRule::prefer_annotated;
};

/// A tag block injected in front of a mention: tag_open, content, tag_close.
struct Insertion {
  std::size_t position = 0; // index of tag_open in the enriched token list
  std::vector<std::string> tokens;
  std::string mention_id;
  int heuristic = 0; // 1: head surface, 2: head gender pronoun, 3: head self-tag

  bool operator==(const Insertion&) const = default;
};

struct EnrichedSentence {
  std::string doc_id;
  int sent_index = 0;
  std::vector<std::string> tokens;
  std::vector<Insertion> insertions; // positions strictly increasing

  bool operator==(const EnrichedSentence&) const = default;
};

/// Drops article and genitive-marker tokens from a chain-head surface.
/// Returns nothing when the cleaned head is empty or longer than
/// cfg.max_head_tokens (the length cap applies after cleaning).
inline std::optional<std::vector<std::string>> clean_head(
    const std::vector<std::string>& head_tokens, const EnrichmentConfig& cfg) {
  std::vector<std::string> out;
  for (const std::string& tok : head_tokens) {
    std::string lower = to_lower(tok);
    if (cfg.articles.count(lower) || cfg.genitive_markers.count(lower)) continue;
    out.push_back(tok);
  }
  if (out.empty() || static_cast<int>(out.size()) > cfg.max_head_tokens) return std::nullopt;
  return out;
}

/// English pronoun for a head's attributes: plural wins, then gender, then
/// "it" for inanimates of unknown gender. No safe choice -> nothing.
inline std::optional<std::string> select_pronoun(Gender gender, NumberAttr number,
                                                 Animacy animacy) {
  if (number == NumberAttr::plural) return "they";
  if (gender == Gender::female) return "she";
  if (gender == Gender::male) return "he";
  if (gender == Gender::neutral) return "it";
  if (animacy == Animacy::inanimate) return "it";
  return std::nullopt;
}

namespace detail {

struct ChainHeadInfo {
  const Mention* head = nullptr;
  std::optional<std::vector<std::string>> cleaned_surface;
  std::optional<std::string> pronoun;
};

inline bool spans_overlap(const TokenSpan& a, const TokenSpan& b) {
  return a.start < b.end && b.start < a.end;
}

} // namespace detail

/// Injects coreference markup into every sentence of a validated document.
/// Mentions are visited earliest-start first, longer spans first; a mention
/// overlapping an already tagged one in the same sentence is skipped. Each
/// insertion lands immediately before the mention's first token.
inline std::vector<EnrichedSentence> enrich_document(
    const Document& doc, const EnrichmentConfig& cfg = {},
    std::vector<std::string>* warnings = nullptr) {
  if (cfg.max_head_tokens < 1) throw DataError("max_head_tokens must be >= 1");
  if (cfg.tag_open == cfg.tag_close) throw DataError("tag_open and tag_close must differ");
  for (std::size_t s = 0; s < doc.sentences.size(); ++s)
    for (const std::string& tok : doc.sentences[s])
      if (tok == cfg.tag_open || tok == cfg.tag_close)
        throw DataError("corpus contains reserved tag token '" + tok + "' (document " +
                        doc.id + ", sentence " + std::to_string(s) + ")");

  // Heads and their derived material are fixed per chain; compute them once.
  std::map<std::string, detail::ChainHeadInfo> head_info;
  std::vector<std::vector<const Mention*>> by_sentence(doc.sentences.size());
  for (const Chain& chain : doc.chains) {
    if (static_cast<int>(chain.size()) < cfg.min_chain_size) continue;
    detail::ChainHeadInfo info;
    info.head = &chain_head(chain, doc, cfg.head_rule);
    info.cleaned_surface = clean_head(mention_tokens(doc, *info.head), cfg);
    info.pronoun = select_pronoun(info.head->gender, info.head->number, info.head->animacy);
    head_info.emplace(chain.id, std::move(info));
    for (const std::string& mid : chain.mention_ids) {
      const Mention& m = doc.mentions.at(mid);
      by_sentence[static_cast<std::size_t>(m.span.sent)].push_back(&m);
    }
  }

  std::vector<EnrichedSentence> out;
  out.reserve(doc.sentences.size());

  struct PendingRun {
    int anchor; // original token index the run precedes
    std::vector<std::string> content;
    std::string mention_id;
    int heuristic;
  };

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& sentence = doc.sentences[s];
    auto candidates = by_sentence[s];
    std::sort(candidates.begin(), candidates.end(), [](const Mention* a, const Mention* b) {
      if (a->span.start != b->span.start) return a->span.start < b->span.start;
      if (a->span.end != b->span.end) return a->span.end > b->span.end;
      return a->id < b->id;
    });

    std::vector<TokenSpan> tagged;
    std::vector<PendingRun> runs;
    for (const Mention* m : candidates) {
      bool overlaps = false;
      for (const TokenSpan& t : tagged)
        if (detail::spans_overlap(t, m->span)) {
          overlaps = true;
          break;
        }
      if (overlaps) continue;

      const detail::ChainHeadInfo& info = head_info.at(m->chain_id);
      std::vector<std::string> content;
      int heuristic = 0;
      if (m->category == MentionCategory::pronoun) {
        if (cfg.excluded_pronouns.count(to_lower(mention_text(doc, *m)))) continue;
        if (info.head->id == m->id) continue; // pronoun head has nothing to prepend
        if (!info.cleaned_surface) continue;
        content = *info.cleaned_surface;
        heuristic = 1;
      } else if (m->category == MentionCategory::nominal_phrase ||
                 m->category == MentionCategory::proper_name) {
        if (!info.pronoun) continue;
        if (info.head->id == m->id) {
          heuristic = 3;
        } else {
          heuristic = 2;
          if (warnings && m->gender != Gender::unknown && m->gender != info.head->gender)
            warnings->push_back("document " + doc.id + " mention " + m->id + ": gender " +
                                to_string(m->gender) + " differs from chain head (" +
                                to_string(info.head->gender) + "); head attributes used");
        }
        content = {*info.pronoun};
      } else {
        continue; // verb phrases and clauses carry no markup
      }

      tagged.push_back(m->span);
      runs.push_back({m->span.start, std::move(content), m->id, heuristic});
    }
    // candidates were scanned by start; accepted anchors are distinct
    std::sort(runs.begin(), runs.end(),
              [](const PendingRun& a, const PendingRun& b) { return a.anchor < b.anchor; });

    EnrichedSentence es;
    es.doc_id = doc.id;
    es.sent_index = static_cast<int>(s);
    es.tokens.reserve(sentence.size() + runs.size() * 3);
    std::size_t next_run = 0;
    for (int t = 0; t < static_cast<int>(sentence.size()); ++t) {
      if (next_run < runs.size() && runs[next_run].anchor == t) {
        PendingRun& run = runs[next_run++];
        Insertion ins;
        ins.position = es.tokens.size();
        ins.mention_id = std::move(run.mention_id);
        ins.heuristic = run.heuristic;
        ins.tokens.reserve(run.content.size() + 2);
        ins.tokens.push_back(cfg.tag_open);
        for (std::string& c : run.content) ins.tokens.push_back(std::move(c));
        ins.tokens.push_back(cfg.tag_close);
        es.tokens.insert(es.tokens.end(), ins.tokens.begin(), ins.tokens.end());
        es.insertions.push_back(std::move(ins));
      }
      es.tokens.push_back(sentence[static_cast<std::size_t>(t)]);
    }
    out.push_back(std::move(es));
  }
  return out;
}

/// Removes every maximal tag_open ... tag_close run, tags included.
/// Tags must be balanced and non-nested.
inline std::vector<std::string> strip_tags(const std::vector<std::string>& line,
                                           const EnrichmentConfig& cfg = {}) {
  std::vector<std::string> out;
  std::optional<std::size_t> open_at;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const std::string& tok = line[i];
    if (tok == cfg.tag_open) {
      if (open_at)
        throw DataError("nested tag '" + cfg.tag_open + "' at token " + std::to_string(i));
      open_at = i;
    } else if (tok == cfg.tag_close) {
      if (!open_at)
        throw DataError("unbalanced tag '" + cfg.tag_close + "' at token " + std::to_string(i));
      open_at.reset();
    } else if (!open_at) {
      out.push_back(tok);
    }
  }
  if (open_at)
    throw DataError("unclosed tag '" + cfg.tag_open + "' at token " + std::to_string(*open_at));
  return out;
}

/// Undoes the recorded insertions, recovering the pre-enrichment token list.
inline std::vector<std::string> original_tokens(const EnrichedSentence& es) {
  std::vector<std::string> out = es.tokens;
  for (auto it = es.insertions.rbegin(); it != es.insertions.rend(); ++it) {
    auto begin = out.begin() + static_cast<std::ptrdiff_t>(it->position);
    out.erase(begin, begin + static_cast<std::ptrdiff_t>(it->tokens.size()));
  }
  return out;
}

} // namespace corefkit
