#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/util.hpp"

namespace corefkit {

////////////////////////////////////////////////////////////////////////////////
// Closed annotation vocabularies. Parsers map unrecognised input onto the
// unknown members (or onto nominal_phrase for mention categories); no value
// outside these sets exists at runtime.
////////////////////////////////////////////////////////////////////////////////

enum class Gender { male, female, neutral, unknown };
enum class NumberAttr { singular, plural, unknown };
enum class Animacy { animate, inanimate, unknown };
enum class MentionCategory { pronoun, nominal_phrase, proper_name, verb_phrase, clause };
enum class CohesiveFunction {
  antecedent,
  anaphoric,
  cataphoric,
  comparative,
  substitution,
  ellipsis,
  apposition
};
enum class PronounType { personal, possessive, demonstrative, reflexive, relative };

inline const char* to_string(Gender v) {
  switch (v) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::neutral: return "neutral";
    default: return "unknown";
  }
}

inline const char* to_string(NumberAttr v) {
  switch (v) {
    case NumberAttr::singular: return "singular";
    case NumberAttr::plural: return "plural";
    default: return "unknown";
  }
}

inline const char* to_string(Animacy v) {
  switch (v) {
    case Animacy::animate: return "animate";
    case Animacy::inanimate: return "inanimate";
    default: return "unknown";
  }
}

inline const char* to_string(MentionCategory v) {
  switch (v) {
    case MentionCategory::pronoun: return "pronoun";
    case MentionCategory::nominal_phrase: return "nominal_phrase";
    case MentionCategory::proper_name: return "proper_name";
    case MentionCategory::verb_phrase: return "verb_phrase";
    default: return "clause";
  }
}

inline const char* to_string(CohesiveFunction v) {
  switch (v) {
    case CohesiveFunction::antecedent: return "antecedent";
    case CohesiveFunction::anaphoric: return "anaphoric";
    case CohesiveFunction::cataphoric: return "cataphoric";
    case CohesiveFunction::comparative: return "comparative";
    case CohesiveFunction::substitution: return "substitution";
    case CohesiveFunction::ellipsis: return "ellipsis";
    default: return "apposition";
  }
}

inline const char* to_string(PronounType v) {
  switch (v) {
    case PronounType::personal: return "personal";
    case PronounType::possessive: return "possessive";
    case PronounType::demonstrative: return "demonstrative";
    case PronounType::reflexive: return "reflexive";
    default: return "relative";
  }
}

inline std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "male") return Gender::male;
  if (s == "female") return Gender::female;
  if (s == "neutral") return Gender::neutral;
  if (s == "unknown") return Gender::unknown;
  return std::nullopt;
}

inline std::optional<NumberAttr> parse_number_attr(std::string_view s) {
  if (s == "singular") return NumberAttr::singular;
  if (s == "plural") return NumberAttr::plural;
  if (s == "unknown") return NumberAttr::unknown;
  return std::nullopt;
}

inline std::optional<Animacy> parse_animacy(std::string_view s) {
  if (s == "animate") return Animacy::animate;
  if (s == "inanimate") return Animacy::inanimate;
  if (s == "unknown") return Animacy::unknown;
  return std::nullopt;
}

inline std::optional<MentionCategory> parse_mention_category(std::string_view s) {
  if (s == "pronoun") return MentionCategory::pronoun;
  if (s == "nominal_phrase") return MentionCategory::nominal_phrase;
  if (s == "proper_name") return MentionCategory::proper_name;
  if (s == "verb_phrase") return MentionCategory::verb_phrase;
  if (s == "clause") return MentionCategory::clause;
  return std::nullopt;
}

inline std::optional<CohesiveFunction> parse_cohesive_function(std::string_view s) {
  if (s == "antecedent") return CohesiveFunction::antecedent;
  if (s == "anaphoric") return CohesiveFunction::anaphoric;
  if (s == "cataphoric") return CohesiveFunction::cataphoric;
  if (s == "comparative") return CohesiveFunction::comparative;
  if (s == "substitution") return CohesiveFunction::substitution;
  if (s == "ellipsis") return CohesiveFunction::ellipsis;
  if (s == "apposition") return CohesiveFunction::apposition;
  return std::nullopt;
}

inline std::optional<PronounType> parse_pronoun_type(std::string_view s) {
  if (s == "personal") return PronounType::personal;
  if (s == "possessive") return PronounType::possessive;
  if (s == "demonstrative") return PronounType::demonstrative;
  if (s == "reflexive") return PronounType::reflexive;
  if (s == "relative") return PronounType::relative;
  return std::nullopt;
}

////////////////////////////////////////////////////////////////////////////////
// Data model
////////////////////////////////////////////////////////////////////////////////

/// Half-open token interval inside one sentence: tokens [start, end).
struct TokenSpan {
  int sent = 0;
  int start = 0;
  int end = 0;

  bool operator==(const TokenSpan&) const = default;
};

struct Mention {
  std::string id;
  std::string chain_id;
  TokenSpan span;
  MentionCategory category = MentionCategory::nominal_phrase;
  Gender gender = Gender::unknown;
  NumberAttr number = NumberAttr::unknown;
  Animacy animacy = Animacy::unknown;
  std::optional<CohesiveFunction> function;
  std::optional<PronounType> pronoun_type; // only meaningful for pronouns

  bool operator==(const Mention&) const = default;
};

/// Mentions of one discourse referent, kept in document order.
struct Chain {
  std::string id;
  std::vector<std::string> mention_ids;
  std::string head_mention_id; // empty: no head annotated, compute on demand

  std::size_t size() const { return mention_ids.size(); }
  bool operator==(const Chain&) const = default;
};

struct Document {
  std::string id;
  std::string genre;
  std::vector<std::vector<std::string>> sentences;
  std::vector<Chain> chains;
  std::map<std::string, Mention> mentions;

  bool operator==(const Document&) const = default;
};

/// Document order on mentions: by sentence, then span start, then span end.
inline bool mention_before(const Mention& a, const Mention& b) {
  if (a.span.sent != b.span.sent) return a.span.sent < b.span.sent;
  if (a.span.start != b.span.start) return a.span.start < b.span.start;
  if (a.span.end != b.span.end) return a.span.end < b.span.end;
  return a.id < b.id;
}

inline std::vector<std::string> mention_tokens(const Document& doc, const Mention& m) {
  const auto& sentence = doc.sentences.at(static_cast<std::size_t>(m.span.sent));
  return {sentence.begin() + m.span.start, sentence.begin() + m.span.end};
}

inline std::string mention_text(const Document& doc, const Mention& m) {
  return join(mention_tokens(doc, m));
}

////////////////////////////////////////////////////////////////////////////////
// Validation
////////////////////////////////////////////////////////////////////////////////

/// Checks every structural invariant; returns one description per violation,
/// each naming the offending id and rule. Empty result means the document is
/// safe for every downstream operation.
inline std::vector<std::string> validate_document(const Document& doc) {
  std::vector<std::string> out;

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (std::size_t t = 0; t < doc.sentences[s].size(); ++t) {
      const std::string& tok = doc.sentences[s][t];
      if (tok.empty())
        out.push_back("token " + std::to_string(s) + ":" + std::to_string(t) +
                      ": empty surface");
      else if (contains_whitespace(tok))
        out.push_back("token " + std::to_string(s) + ":" + std::to_string(t) +
                      ": surface contains whitespace");
    }
  }

  for (const auto& [id, m] : doc.mentions) {
    if (id != m.id) {
      out.push_back("mention " + id + ": map key differs from mention id '" + m.id + "'");
      continue;
    }
    if (m.span.sent < 0 || static_cast<std::size_t>(m.span.sent) >= doc.sentences.size()) {
      out.push_back("mention " + id + ": sentence index out of range");
    } else {
      int len = static_cast<int>(doc.sentences[static_cast<std::size_t>(m.span.sent)].size());
      if (m.span.start == m.span.end)
        out.push_back("mention " + id + ": empty span");
      else if (m.span.start < 0 || m.span.start > m.span.end || m.span.end > len)
        out.push_back("mention " + id + ": span outside sentence bounds");
    }
    if (m.pronoun_type && m.category != MentionCategory::pronoun)
      out.push_back("mention " + id + ": pronoun_type on non-pronoun category");
  }

  std::map<std::string, int> referenced;
  std::map<std::string, int> chain_ids_seen;
  for (const Chain& c : doc.chains) {
    if (++chain_ids_seen[c.id] == 2)
      out.push_back("chain " + c.id + ": duplicate chain id");
    if (c.mention_ids.empty()) {
      out.push_back("chain " + c.id + ": no mentions");
      continue;
    }
    const Mention* prev = nullptr;
    for (const std::string& mid : c.mention_ids) {
      ++referenced[mid];
      auto it = doc.mentions.find(mid);
      if (it == doc.mentions.end()) {
        out.push_back("chain " + c.id + ": references missing mention " + mid);
        continue;
      }
      const Mention& m = it->second;
      if (m.chain_id != c.id)
        out.push_back("mention " + mid + ": chain_id '" + m.chain_id +
                      "' does not match containing chain " + c.id);
      if (prev && (prev->span.sent > m.span.sent ||
                   (prev->span.sent == m.span.sent && prev->span.start > m.span.start)))
        out.push_back("chain " + c.id + ": mentions not in document order at " + mid);
      prev = &m;
    }
    if (!c.head_mention_id.empty()) {
      bool member = false;
      for (const std::string& mid : c.mention_ids)
        if (mid == c.head_mention_id) member = true;
      if (!member)
        out.push_back("chain " + c.id + ": head " + c.head_mention_id + " is not a member");
    }
  }

  for (const auto& [id, m] : doc.mentions) {
    auto it = referenced.find(id);
    if (it == referenced.end())
      out.push_back("mention " + id + ": not referenced by any chain");
    else if (it->second > 1)
      out.push_back("mention " + id + ": referenced by more than one chain entry");
  }

  return out;
}

/// Non-fatal oddities: singleton chains are legal input but usually indicate
/// antecedent-only entries; counting policy is decided by the statistics side.
inline std::vector<std::string> validation_warnings(const Document& doc) {
  std::vector<std::string> out;
  for (const Chain& c : doc.chains)
    if (c.mention_ids.size() == 1)
      out.push_back("chain " + c.id + ": singleton chain");
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Chain head
////////////////////////////////////////////////////////////////////////////////

enum class HeadRule {
  prefer_annotated, // honour an annotated head, compute otherwise
  computed          // always compute, ignoring annotated heads
};

/// The representative mention of a chain. Computed rule: first nominal or
/// proper-name mention in document order, else the chain's first mention.
inline const Mention& chain_head(const Chain& chain, const Document& doc,
                                 HeadRule rule = HeadRule::prefer_annotated) {
  if (rule == HeadRule::prefer_annotated && !chain.head_mention_id.empty()) {
    auto it = doc.mentions.find(chain.head_mention_id);
    if (it != doc.mentions.end()) return it->second;
  }
  const Mention* first = nullptr;
  for (const std::string& mid : chain.mention_ids) {
    const Mention& m = doc.mentions.at(mid);
    if (!first) first = &m;
    if (m.category == MentionCategory::nominal_phrase ||
        m.category == MentionCategory::proper_name)
      return m;
  }
  return *first;
}

} // namespace corefkit
