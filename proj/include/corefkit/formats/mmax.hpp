#pragma once

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

/// Attribute names looked up on <markable> elements. Annotation exports
/// disagree on naming, so each logical field has a candidate list; the first
/// attribute present wins.
struct MmaxAttributeNames {
  std::string span = "span";
  std::string coref_class = "coref_class";
  std::vector<std::string> mention_type{"mention_type", "mention", "type"};
  std::vector<std::string> cohesive_function{"cohesive_function", "function"};
  std::vector<std::string> pronoun_type{"pronoun_type", "pron_type"};
  std::vector<std::string> gender{"gender"};
  std::vector<std::string> number{"number"};
  std::vector<std::string> animacy{"animacy"};
  std::string word_sentence = "sentence"; // sentence-boundary attribute on <word>
};

struct MmaxOptions {
  std::string doc_id = "doc";
  std::string genre;
  MmaxAttributeNames attrs;
};

namespace detail {

struct XmlElement {
  std::string name; // local name, prefix stripped
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text; // immediate text content (leaf elements only)
  std::size_t line = 0;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

inline std::string decode_xml_entities(std::string_view s, std::size_t line) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    auto end = s.find(';', i + 1);
    if (end == std::string_view::npos) throw ParseError(line, "unterminated XML entity");
    std::string_view name = s.substr(i + 1, end - i - 1);
    if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else if (!name.empty() && name[0] == '#') {
      long code = std::strtol(std::string(name.substr(name[1] == 'x' ? 2 : 1)).c_str(), nullptr,
                              name[1] == 'x' ? 16 : 10);
      if (code <= 0 || code > 0x10FFFF) throw ParseError(line, "bad character reference");
      // minimal UTF-8 encoder
      if (code < 0x80) out += static_cast<char>(code);
      else if (code < 0x800) {
        out += static_cast<char>(0xC0 | (code >> 6));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else if (code < 0x10000) {
        out += static_cast<char>(0xE0 | (code >> 12));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else {
        out += static_cast<char>(0xF0 | (code >> 18));
        out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      }
    } else {
      throw ParseError(line, "unknown XML entity '&" + std::string(name) + ";'");
    }
    i = end;
  }
  return out;
}

/// Forward-only scanner over the XML subset used by annotation level files:
/// start tags with attributes, optional immediate text, self-closing tags,
/// comments, processing instructions and doctype lines.
class XmlScanner {
public:
  explicit XmlScanner(std::istream& in)
      : buf_(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()) {}

  std::optional<XmlElement> next() {
    for (;;) {
      skip_until('<');
      if (pos_ >= buf_.size()) return std::nullopt;
      std::size_t line = line_;
      if (match("<?")) { skip_past("?>"); continue; }
      if (match("<!--")) { skip_past("-->"); continue; }
      if (match("<!")) { skip_past(">"); continue; }
      if (match("</")) { skip_past(">"); continue; }
      ++pos_; // consume '<'
      XmlElement el;
      el.line = line;
      el.name = read_name();
      if (el.name.empty()) throw ParseError(line, "malformed tag");
      auto colon = el.name.find(':');
      if (colon != std::string::npos) el.name.erase(0, colon + 1);
      bool self_closing = read_attributes(el);
      if (!self_closing) {
        std::size_t text_start = pos_;
        skip_until('<');
        el.text = decode_xml_entities(
            trim(std::string_view(buf_).substr(text_start, pos_ - text_start)), el.line);
      }
      return el;
    }
  }

private:
  bool match(std::string_view lit) {
    if (buf_.compare(pos_, lit.size(), lit) != 0) return false;
    advance(lit.size());
    return true;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < buf_.size(); ++i, ++pos_)
      if (buf_[pos_] == '\n') ++line_;
  }

  void skip_until(char c) {
    while (pos_ < buf_.size() && buf_[pos_] != c) {
      if (buf_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void skip_past(std::string_view lit) {
    auto at = buf_.find(lit, pos_);
    if (at == std::string::npos) throw ParseError(line_, "unterminated markup");
    advance(at + lit.size() - pos_);
  }

  void skip_ws() {
    while (pos_ < buf_.size() && is_space(buf_[pos_])) {
      if (buf_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (pos_ < buf_.size() && !is_space(buf_[pos_]) && buf_[pos_] != '>' &&
           buf_[pos_] != '/' && buf_[pos_] != '=')
      ++pos_;
    return buf_.substr(start, pos_ - start);
  }

  // Returns true for self-closing tags.
  bool read_attributes(XmlElement& el) {
    for (;;) {
      skip_ws();
      if (pos_ >= buf_.size()) throw ParseError(el.line, "unterminated tag");
      if (buf_[pos_] == '>') { ++pos_; return false; }
      if (buf_[pos_] == '/') {
        ++pos_;
        if (pos_ >= buf_.size() || buf_[pos_] != '>')
          throw ParseError(el.line, "malformed self-closing tag");
        ++pos_;
        return true;
      }
      std::string key = read_name();
      skip_ws();
      if (pos_ >= buf_.size() || buf_[pos_] != '=')
        throw ParseError(el.line, "attribute '" + key + "' missing value");
      ++pos_;
      skip_ws();
      if (pos_ >= buf_.size() || (buf_[pos_] != '"' && buf_[pos_] != '\''))
        throw ParseError(el.line, "attribute '" + key + "' value not quoted");
      char quote = buf_[pos_++];
      std::size_t start = pos_;
      while (pos_ < buf_.size() && buf_[pos_] != quote) {
        if (buf_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ >= buf_.size()) throw ParseError(el.line, "unterminated attribute value");
      el.attrs.emplace_back(std::move(key),
                            decode_xml_entities(
                                std::string_view(buf_).substr(start, pos_ - start), el.line));
      ++pos_;
    }
  }

  std::string buf_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

inline const std::string* first_attr(const XmlElement& el,
                                     const std::vector<std::string>& candidates) {
  for (const std::string& name : candidates)
    if (const std::string* v = el.attr(name)) return v;
  return nullptr;
}

inline MentionCategory map_mention_type(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "pronoun" || v == "pron" || v == "prn") return MentionCategory::pronoun;
  if (v == "ne" || v == "name" || v == "proper_name" || v == "propername" || v == "pn")
    return MentionCategory::proper_name;
  if (v == "vp" || v == "verb_phrase" || v == "verbal") return MentionCategory::verb_phrase;
  if (v == "clause" || v == "cl") return MentionCategory::clause;
  return MentionCategory::nominal_phrase; // np / nominal / anything else
}

inline Gender map_gender(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "male" || v == "masc" || v == "masculine" || v == "m") return Gender::male;
  if (v == "female" || v == "fem" || v == "feminine" || v == "f") return Gender::female;
  if (v == "neutral" || v == "neut" || v == "neuter" || v == "n") return Gender::neutral;
  return Gender::unknown;
}

inline NumberAttr map_number(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "singular" || v == "sg" || v == "sing") return NumberAttr::singular;
  if (v == "plural" || v == "pl" || v == "plur") return NumberAttr::plural;
  return NumberAttr::unknown;
}

inline Animacy map_animacy(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "animate" || v == "anim") return Animacy::animate;
  if (v == "inanimate" || v == "inanim") return Animacy::inanimate;
  return Animacy::unknown;
}

inline std::optional<CohesiveFunction> map_cohesive_function(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "anaphor" || v == "anaphora") return CohesiveFunction::anaphoric;
  if (v == "ante") return CohesiveFunction::antecedent;
  return parse_cohesive_function(v);
}

inline std::optional<PronounType> map_pronoun_type(std::string_view raw) {
  std::string v = to_lower(raw);
  if (v == "pers") return PronounType::personal;
  if (v == "poss") return PronounType::possessive;
  if (v == "dem") return PronounType::demonstrative;
  if (v == "refl") return PronounType::reflexive;
  if (v == "rel") return PronounType::relative;
  return parse_pronoun_type(v);
}

struct MmaxWord {
  std::string id;
  std::string surface;
  std::string sentence_label;
  std::size_t line = 0;
};

inline std::vector<MmaxWord> read_mmax_words(std::istream& in, const MmaxAttributeNames& attrs) {
  std::vector<MmaxWord> words;
  XmlScanner scanner(in);
  while (auto el = scanner.next()) {
    if (el->name != "word") continue;
    const std::string* id = el->attr("id");
    if (!id) throw ParseError(el->line, "word element missing id attribute");
    std::string surface(trim(el->text));
    if (surface.empty())
      throw ParseError(el->line, "word " + *id + ": empty surface");
    if (contains_whitespace(surface))
      throw ParseError(el->line, "word " + *id + ": surface contains whitespace");
    const std::string* sent = el->attr(attrs.word_sentence);
    words.push_back({*id, std::move(surface), sent ? *sent : std::string(), el->line});
  }
  return words;
}

// "word_2..word_4" or "word_2"; comma-separated (discontinuous) spans are
// outside the supported subset.
inline std::pair<std::string, std::string> parse_span_attr(const std::string& span,
                                                           std::size_t line) {
  if (span.find(',') != std::string::npos)
    throw ParseError(line, "discontinuous span '" + span + "' is not supported");
  auto dots = span.find("..");
  if (dots == std::string::npos) {
    std::string one(trim(span));
    if (one.empty()) throw ParseError(line, "malformed span '" + span + "'");
    return {one, one};
  }
  std::string first(trim(span.substr(0, dots)));
  std::string last(trim(span.substr(dots + 2)));
  if (first.empty() || last.empty() || last.find("..") != std::string::npos)
    throw ParseError(line, "malformed span '" + span + "'");
  return {first, last};
}

} // namespace detail

/// Parses the words level plus one coreference markable level. Sentence
/// boundaries come from a sentence attribute on the word elements, from a
/// separate sentence-level markable stream, or default to a single sentence.
/// Markables sharing a coref_class value become one chain.
inline Document parse_mmax(std::istream& words_file, std::istream& markables_file,
                           std::istream* sentence_markables, const MmaxOptions& opts = {}) {
  const MmaxAttributeNames& attrs = opts.attrs;
  std::vector<detail::MmaxWord> words = detail::read_mmax_words(words_file, attrs);

  std::map<std::string, std::size_t> word_index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!word_index.emplace(words[i].id, i).second)
      throw ParseError(words[i].line, "duplicate word id '" + words[i].id + "'");
  }

  // sentence assignment per word
  std::vector<int> sent_of(words.size(), 0);
  if (sentence_markables) {
    struct SentSpan {
      std::size_t first, last, line;
    };
    std::vector<SentSpan> spans;
    detail::XmlScanner scanner(*sentence_markables);
    while (auto el = scanner.next()) {
      if (el->name != "markable") continue;
      const std::string* span = el->attr(attrs.span);
      if (!span) throw ParseError(el->line, "sentence markable missing span attribute");
      auto [a, b] = detail::parse_span_attr(*span, el->line);
      auto ita = word_index.find(a);
      auto itb = word_index.find(b);
      if (ita == word_index.end())
        throw ParseError(el->line, "span references missing word id '" + a + "'");
      if (itb == word_index.end())
        throw ParseError(el->line, "span references missing word id '" + b + "'");
      if (ita->second > itb->second)
        throw ParseError(el->line, "span '" + *span + "' runs backwards");
      spans.push_back({ita->second, itb->second, el->line});
    }
    std::sort(spans.begin(), spans.end(),
              [](const SentSpan& x, const SentSpan& y) { return x.first < y.first; });
    std::size_t expect = 0;
    for (std::size_t s = 0; s < spans.size(); ++s) {
      if (spans[s].first != expect)
        throw ParseError(spans[s].line, "sentence markables do not cover word " +
                                            words[expect].id);
      for (std::size_t w = spans[s].first; w <= spans[s].last; ++w)
        sent_of[w] = static_cast<int>(s);
      expect = spans[s].last + 1;
    }
    if (!words.empty() && expect != words.size())
      throw ParseError(words.back().line,
                       "sentence markables do not cover word " + words[expect].id);
  } else {
    int sent = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0 && words[i].sentence_label != words[i - 1].sentence_label) ++sent;
      sent_of[i] = sent;
    }
  }

  Document doc;
  doc.id = opts.doc_id;
  doc.genre = opts.genre;
  std::vector<int> tok_of(words.size(), 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (doc.sentences.size() <= static_cast<std::size_t>(sent_of[i])) doc.sentences.emplace_back();
    tok_of[i] = static_cast<int>(doc.sentences.back().size());
    doc.sentences.back().push_back(words[i].surface);
  }

  // markables -> mentions
  detail::XmlScanner scanner(markables_file);
  std::map<std::string, std::vector<std::string>> chains; // coref class -> mention ids
  std::size_t ordinal = 0;
  while (auto el = scanner.next()) {
    if (el->name != "markable") continue;
    const std::string* span = el->attr(attrs.span);
    if (!span) throw ParseError(el->line, "markable missing span attribute");
    auto [a, b] = detail::parse_span_attr(*span, el->line);
    auto ita = word_index.find(a);
    auto itb = word_index.find(b);
    if (ita == word_index.end())
      throw ParseError(el->line, "span references missing word id '" + a + "'");
    if (itb == word_index.end())
      throw ParseError(el->line, "span references missing word id '" + b + "'");
    std::size_t wa = ita->second, wb = itb->second;
    if (wa > wb) throw ParseError(el->line, "span '" + *span + "' runs backwards");
    if (sent_of[wa] != sent_of[wb])
      throw ParseError(el->line, "span '" + *span + "' crosses a sentence boundary");

    Mention m;
    const std::string* mid = el->attr("id");
    m.id = mid ? *mid : "m" + std::to_string(ordinal);
    ++ordinal;
    m.span = {sent_of[wa], tok_of[wa], tok_of[wb] + 1};
    if (const std::string* v = detail::first_attr(*el, attrs.mention_type))
      m.category = detail::map_mention_type(*v);
    if (const std::string* v = detail::first_attr(*el, attrs.gender))
      m.gender = detail::map_gender(*v);
    if (const std::string* v = detail::first_attr(*el, attrs.number))
      m.number = detail::map_number(*v);
    if (const std::string* v = detail::first_attr(*el, attrs.animacy))
      m.animacy = detail::map_animacy(*v);
    if (const std::string* v = detail::first_attr(*el, attrs.cohesive_function))
      m.function = detail::map_cohesive_function(*v);
    if (m.category == MentionCategory::pronoun)
      if (const std::string* v = detail::first_attr(*el, attrs.pronoun_type))
        m.pronoun_type = detail::map_pronoun_type(*v);

    const std::string* cls = el->attr(attrs.coref_class);
    std::string chain_id =
        (cls && !trim(*cls).empty()) ? std::string(trim(*cls)) : "single_" + m.id;
    m.chain_id = chain_id;
    if (!doc.mentions.emplace(m.id, m).second)
      throw ParseError(el->line, "duplicate markable id '" + m.id + "'");
    chains[chain_id].push_back(m.id);
  }

  for (auto& [id, mention_ids] : chains) {
    Chain chain;
    chain.id = id;
    chain.mention_ids = std::move(mention_ids);
    std::sort(chain.mention_ids.begin(), chain.mention_ids.end(),
              [&](const std::string& x, const std::string& y) {
                return mention_before(doc.mentions.at(x), doc.mentions.at(y));
              });
    doc.chains.push_back(std::move(chain));
  }
  return doc;
}

inline Document parse_mmax(std::istream& words_file, std::istream& markables_file,
                           const MmaxOptions& opts = {}) {
  return parse_mmax(words_file, markables_file, nullptr, opts);
}

} // namespace corefkit
