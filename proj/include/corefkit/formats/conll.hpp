#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

/// Column layout of a CoNLL-2012-style coreference file. Indices are 0-based;
/// coref == -1 selects the last column, pos == -1 disables pronoun detection.
struct ConllColumns {
  int word = 3;
  int pos = 4;
  int coref = -1;
  std::vector<std::string> pronoun_pos{"PRP", "PRP$", "WP", "WP$"};
  std::string default_genre;
};

namespace detail {

struct RawConllMention {
  std::string chain;
  int sent = 0;
  int start = 0;
  int end = 0;
  bool pronoun = false;
};

inline std::string conll_document_id(std::string_view line, std::size_t lineno) {
  // "#begin document (<id>); part NNN" or "#begin document <id>"
  auto open = line.find('(');
  if (open != std::string_view::npos) {
    auto close = line.find(')', open + 1);
    if (close == std::string_view::npos)
      throw ParseError(lineno, "malformed #begin document line");
    return std::string(line.substr(open + 1, close - open - 1));
  }
  std::string_view rest = trim(line.substr(std::string_view("#begin document").size()));
  if (rest.empty()) throw ParseError(lineno, "missing document id in #begin document");
  return std::string(rest);
}

} // namespace detail

/// Reads documents delimited by #begin/#end lines; blank lines close
/// sentences. Chains are rebuilt from the (id ... id) bracket markers of the
/// coreference column; mention attributes default to unknown, category to
/// nominal_phrase unless the POS column marks a single-token pronoun.
inline std::vector<Document> parse_conll(std::istream& in, const ConllColumns& cols = {}) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  bool in_doc = false;
  std::string doc_id;
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> sent;
  std::vector<bool> sent_pronoun;
  std::map<std::string, std::pair<int, std::size_t>> open; // chain -> (start tok, line)
  std::vector<detail::RawConllMention> raw;

  auto close_sentence = [&](std::size_t at) {
    if (!open.empty())
      throw ParseError(at, "unbalanced chain brackets: chain " + open.begin()->first +
                               " opened at line " + std::to_string(open.begin()->second.second) +
                               " is never closed");
    if (!sent.empty()) {
      sentences.push_back(std::move(sent));
      sent.clear();
      sent_pronoun.clear();
    }
  };

  auto finish_document = [&]() {
    std::sort(raw.begin(), raw.end(),
              [](const detail::RawConllMention& a, const detail::RawConllMention& b) {
                if (a.sent != b.sent) return a.sent < b.sent;
                if (a.start != b.start) return a.start < b.start;
                if (a.end != b.end) return a.end < b.end;
                return a.chain < b.chain;
              });
    Document doc;
    doc.id = doc_id;
    doc.genre = cols.default_genre;
    doc.sentences = std::move(sentences);
    sentences.clear();
    std::map<std::string, Chain> chains;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      Mention m;
      m.id = "m" + std::to_string(i);
      m.chain_id = raw[i].chain;
      m.span = {raw[i].sent, raw[i].start, raw[i].end};
      if (raw[i].pronoun) m.category = MentionCategory::pronoun;
      chains[m.chain_id].mention_ids.push_back(m.id);
      doc.mentions.emplace(m.id, std::move(m));
    }
    raw.clear();
    for (auto& [id, chain] : chains) {
      chain.id = id;
      doc.chains.push_back(std::move(chain));
    }
    docs.push_back(std::move(doc));
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    if (line.rfind("#begin document", 0) == 0) {
      if (in_doc) throw ParseError(lineno, "nested #begin document");
      in_doc = true;
      doc_id = detail::conll_document_id(line, lineno);
      continue;
    }
    if (line.rfind("#end document", 0) == 0) {
      if (!in_doc) throw ParseError(lineno, "#end document without #begin document");
      close_sentence(lineno);
      finish_document();
      in_doc = false;
      continue;
    }
    if (trim(line).empty()) {
      if (in_doc) close_sentence(lineno);
      continue;
    }
    if (line[0] == '#') continue;
    if (!in_doc) throw ParseError(lineno, "token row outside of a document");

    std::vector<std::string> fields = split_tokens(line);
    int n = static_cast<int>(fields.size());
    int coref_col = cols.coref < 0 ? n - 1 : cols.coref;
    if (cols.word >= n || coref_col >= n)
      throw ParseError(lineno, "row has " + std::to_string(n) + " columns, need word column " +
                                   std::to_string(cols.word) + " and coreference column " +
                                   std::to_string(coref_col));
    int t = static_cast<int>(sent.size());
    sent.push_back(fields[static_cast<std::size_t>(cols.word)]);
    bool pron = cols.pos >= 0 && cols.pos < n &&
                std::find(cols.pronoun_pos.begin(), cols.pronoun_pos.end(),
                          fields[static_cast<std::size_t>(cols.pos)]) != cols.pronoun_pos.end();
    sent_pronoun.push_back(pron);

    const std::string& field = fields[static_cast<std::size_t>(coref_col)];
    if (field == "-") continue;
    int sent_index = static_cast<int>(sentences.size());
    for (const std::string& part : split_on(field, '|')) {
      bool opens = !part.empty() && part.front() == '(';
      bool closes = !part.empty() && part.back() == ')';
      std::string id = part.substr(opens ? 1 : 0,
                                   part.size() - (opens ? 1 : 0) - (closes ? 1 : 0));
      if (id.empty() || (!opens && !closes) ||
          id.find_first_of("()") != std::string::npos)
        throw ParseError(lineno, "bad coreference marker '" + part + "'");
      if (opens && open.count(id))
        throw ParseError(lineno, "crossing mentions of chain " + id + " (already open since line " +
                                     std::to_string(open[id].second) + ")");
      if (opens && closes) {
        raw.push_back({id, sent_index, t, t + 1, sent_pronoun[static_cast<std::size_t>(t)]});
      } else if (opens) {
        open[id] = {t, lineno};
      } else {
        auto it = open.find(id);
        if (it == open.end())
          throw ParseError(lineno, "unbalanced chain brackets: ')' for chain " + id +
                                       " without matching '('");
        int start = it->second.first;
        bool single = start == t;
        raw.push_back({id, sent_index, start, t + 1,
                       single && sent_pronoun[static_cast<std::size_t>(t)]});
        open.erase(it);
      }
    }
  }
  if (in_doc) throw ParseError(lineno, "missing #end document");
  return docs;
}

/// Canonical six-column emitter: doc id, part, token index, word, POS, coref.
/// Single-token pronoun mentions carry a PRP POS so category survives a
/// round trip; everything else is written as "-".
inline void write_conll(const std::vector<Document>& docs, std::ostream& out,
                        const ConllColumns& cols = {}) {
  for (const Document& doc : docs) {
    if (contains_whitespace(doc.id))
      throw DataError("document id '" + doc.id + "' contains whitespace");

    // chain labels: keep numeric ids, otherwise number the sorted id list
    std::map<std::string, std::string> label;
    bool all_numeric = !doc.chains.empty();
    for (const Chain& c : doc.chains)
      if (!is_digits(c.id)) all_numeric = false;
    std::vector<std::string> ids;
    for (const Chain& c : doc.chains) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i)
      label[ids[i]] = all_numeric ? ids[i] : std::to_string(i);

    // per-token markers
    struct Markers {
      std::vector<std::pair<int, std::string>> opens;   // (end, label)
      std::vector<std::string> singles;
      std::vector<std::pair<int, std::string>> closes;  // (start, label)
    };
    std::vector<std::vector<Markers>> markers(doc.sentences.size());
    std::vector<std::vector<bool>> pronoun_at(doc.sentences.size());
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      markers[s].resize(doc.sentences[s].size());
      pronoun_at[s].resize(doc.sentences[s].size(), false);
    }
    for (const auto& [mid, m] : doc.mentions) {
      auto& sentence_markers = markers.at(static_cast<std::size_t>(m.span.sent));
      const std::string& lab = label.at(m.chain_id);
      if (m.span.end - m.span.start == 1) {
        sentence_markers[static_cast<std::size_t>(m.span.start)].singles.push_back(lab);
        if (m.category == MentionCategory::pronoun)
          pronoun_at[static_cast<std::size_t>(m.span.sent)]
                    [static_cast<std::size_t>(m.span.start)] = true;
      } else {
        sentence_markers[static_cast<std::size_t>(m.span.start)].opens.push_back(
            {m.span.end, lab});
        sentence_markers[static_cast<std::size_t>(m.span.end - 1)].closes.push_back(
            {m.span.start, lab});
      }
    }

    out << "#begin document (" << doc.id << "); part 000\n";
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (std::size_t t = 0; t < doc.sentences[s].size(); ++t) {
        Markers& mk = markers[s][t];
        // outer mentions open first, inner mentions close first
        std::sort(mk.opens.begin(), mk.opens.end(),
                  [](const auto& a, const auto& b) {
                    return a.first != b.first ? a.first > b.first : a.second < b.second;
                  });
        std::sort(mk.closes.begin(), mk.closes.end(),
                  [](const auto& a, const auto& b) {
                    return a.first != b.first ? a.first > b.first : a.second < b.second;
                  });
        std::sort(mk.singles.begin(), mk.singles.end());
        std::vector<std::string> parts;
        for (auto& [end, lab] : mk.opens) parts.push_back("(" + lab);
        for (auto& lab : mk.singles) parts.push_back("(" + lab + ")");
        for (auto& [start, lab] : mk.closes) parts.push_back(lab + ")");

        std::string pos = "-";
        if (pronoun_at[s][t]) pos = cols.pronoun_pos.empty() ? "PRP" : cols.pronoun_pos.front();

        out << doc.id << '\t' << 0 << '\t' << t << '\t' << doc.sentences[s][t] << '\t' << pos
            << '\t' << (parts.empty() ? "-" : join(parts, "|")) << '\n';
      }
      out << '\n';
    }
    out << "#end document\n";
  }
}

} // namespace corefkit
