#pragma once

// Shared fixtures and the randomized document generator used by the property
// tests and the acceptance suite.

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "corefkit/model.hpp"

namespace corefkit::testing {

inline Mention make_mention(std::string id, std::string chain, int sent, int start, int end,
                            MentionCategory category = MentionCategory::nominal_phrase,
                            Gender gender = Gender::unknown,
                            NumberAttr number = NumberAttr::unknown,
                            Animacy animacy = Animacy::unknown) {
  Mention m;
  m.id = std::move(id);
  m.chain_id = std::move(chain);
  m.span = {sent, start, end};
  m.category = category;
  m.gender = gender;
  m.number = number;
  m.animacy = animacy;
  return m;
}

inline void add_chain(Document& doc, Chain chain, std::vector<Mention> mentions) {
  std::sort(mentions.begin(), mentions.end(), mention_before);
  for (Mention& m : mentions) {
    chain.mention_ids.push_back(m.id);
    doc.mentions.emplace(m.id, std::move(m));
  }
  doc.chains.push_back(std::move(chain));
}

/// "I never cook with it ." where "it" sits in a chain headed by "the salt".
inline Document salt_document() {
  Document doc;
  doc.id = "salt";
  doc.genre = "news";
  doc.sentences = {{"We", "bought", "the", "salt", "."},
                   {"I", "never", "cook", "with", "it", "."}};
  Chain chain;
  chain.id = "c0";
  chain.head_mention_id = "m0";
  add_chain(doc, chain,
            {make_mention("m0", "c0", 0, 2, 4, MentionCategory::nominal_phrase, Gender::unknown,
                          NumberAttr::singular, Animacy::unknown),
             make_mention("m1", "c0", 1, 4, 5, MentionCategory::pronoun, Gender::unknown,
                          NumberAttr::singular, Animacy::inanimate)});
  return doc;
}

/// "Biles arrived late ." where "Biles" corefers with a female head mention.
inline Document biles_document() {
  Document doc;
  doc.id = "biles";
  doc.genre = "news";
  doc.sentences = {{"Simone", "Biles", "is", "a", "gymnast", "."},
                   {"Biles", "arrived", "late", "."}};
  Chain chain;
  chain.id = "c0";
  chain.head_mention_id = "m0";
  add_chain(doc, chain,
            {make_mention("m0", "c0", 0, 0, 2, MentionCategory::proper_name, Gender::female,
                          NumberAttr::singular, Animacy::animate),
             make_mention("m1", "c0", 1, 0, 1, MentionCategory::proper_name, Gender::female,
                          NumberAttr::singular, Animacy::animate)});
  return doc;
}

////////////////////////////////////////////////////////////////////////////////
// Randomized documents
////////////////////////////////////////////////////////////////////////////////

struct DocGenOptions {
  int max_sentences = 6;
  int max_sentence_len = 12;
  int max_chains = 5;
  int max_chain_size = 5;
  double singleton_prob = 0.15;
  double explicit_head_prob = 0.3;
};

inline const std::vector<std::string>& lexicon() {
  static const std::vector<std::string> words = {
      "the", "a",    "an",      "salt",    "cat",  "dog",   "Biles", "president",
      "team", "wage", "coach",   "'s",      "it",   "she",   "he",    "they",
      "we",   "I",    "you",     "cook",    "run",  "sees",  ".",     ",",
      "minimum", "current", "national", "blue", "Mahaj", "Brown", "talks", "news"};
  return words;
}

inline std::string padded(const char* prefix, int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%s%04d", prefix, n);
  return buf;
}

/// Always produces a document that passes validate_document.
inline Document random_document(std::mt19937& rng, const std::string& id,
                                const DocGenOptions& opt = {}) {
  auto rint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };

  Document doc;
  doc.id = id;
  doc.genre = chance(0.5) ? "news" : "ted";
  int n_sent = rint(1, opt.max_sentences);
  for (int s = 0; s < n_sent; ++s) {
    int len = rint(1, opt.max_sentence_len);
    std::vector<std::string> sent;
    for (int t = 0; t < len; ++t)
      sent.push_back(lexicon()[static_cast<std::size_t>(
          rint(0, static_cast<int>(lexicon().size()) - 1))]);
    doc.sentences.push_back(std::move(sent));
  }

  int n_chains = rint(0, opt.max_chains);
  int mention_counter = 0;
  for (int c = 0; c < n_chains; ++c) {
    Chain chain;
    chain.id = padded("c", c);
    int size = chance(opt.singleton_prob) ? 1 : rint(2, opt.max_chain_size);
    std::vector<Mention> mentions;
    for (int k = 0; k < size; ++k) {
      Mention m;
      m.id = padded("m", mention_counter++);
      m.chain_id = chain.id;
      int s = rint(0, n_sent - 1);
      int len = static_cast<int>(doc.sentences[static_cast<std::size_t>(s)].size());
      int span_len = rint(1, std::min(3, len));
      int start = rint(0, len - span_len);
      m.span = {s, start, start + span_len};
      int roll = rint(0, 99);
      if (roll < 40) m.category = MentionCategory::pronoun;
      else if (roll < 75) m.category = MentionCategory::nominal_phrase;
      else if (roll < 90) m.category = MentionCategory::proper_name;
      else if (roll < 95) m.category = MentionCategory::verb_phrase;
      else m.category = MentionCategory::clause;
      m.gender = static_cast<Gender>(rint(0, 3));
      m.number = static_cast<NumberAttr>(rint(0, 2));
      m.animacy = static_cast<Animacy>(rint(0, 2));
      if (chance(0.5)) m.function = static_cast<CohesiveFunction>(rint(0, 6));
      if (m.category == MentionCategory::pronoun && chance(0.5))
        m.pronoun_type = static_cast<PronounType>(rint(0, 4));
      mentions.push_back(std::move(m));
    }
    std::sort(mentions.begin(), mentions.end(), mention_before);
    for (Mention& m : mentions) {
      chain.mention_ids.push_back(m.id);
      doc.mentions.emplace(m.id, std::move(m));
    }
    if (chance(opt.explicit_head_prob))
      chain.head_mention_id =
          chain.mention_ids[static_cast<std::size_t>(rint(0, size - 1))];
    doc.chains.push_back(std::move(chain));
  }

  if (!validate_document(doc).empty())
    throw std::logic_error("random_document produced an invalid document");
  return doc;
}

} // namespace corefkit::testing
