#pragma once

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"

namespace corefkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& require_field(const Json& j, const char* name, std::size_t line) {
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(line, std::string("missing field: ") + name);
  return *it;
}

inline std::string require_string(const Json& j, const char* name, std::size_t line) {
  const Json& v = require_field(j, name, line);
  if (!v.is_string())
    throw ParseError(line, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

inline int require_int(const Json& j, const char* name, std::size_t line) {
  const Json& v = require_field(j, name, line);
  if (!v.is_number_integer())
    throw ParseError(line, std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

template <typename T, typename Parser>
T parse_vocab(const Json& j, const char* name, std::size_t line, Parser parser) {
  std::string raw = require_string(j, name, line);
  auto parsed = parser(raw);
  if (!parsed)
    throw ParseError(line, std::string("field '") + name + "': unknown value '" + raw + "'");
  return *parsed;
}

} // namespace detail

inline Json document_to_json(const Document& doc) {
  Json j;
  j["id"] = doc.id;
  j["genre"] = doc.genre;
  j["sentences"] = doc.sentences;

  Json mentions = Json::object();
  for (const auto& [id, m] : doc.mentions) { // std::map: ids already sorted
    Json jm;
    jm["chain_id"] = m.chain_id;
    jm["span"] = Json{{"sent", m.span.sent}, {"start", m.span.start}, {"end", m.span.end}};
    jm["category"] = to_string(m.category);
    jm["gender"] = to_string(m.gender);
    jm["number"] = to_string(m.number);
    jm["animacy"] = to_string(m.animacy);
    if (m.function) jm["function"] = to_string(*m.function);
    if (m.pronoun_type) jm["pronoun_type"] = to_string(*m.pronoun_type);
    mentions[id] = std::move(jm);
  }
  j["mentions"] = std::move(mentions);

  std::vector<const Chain*> chains;
  for (const Chain& c : doc.chains) chains.push_back(&c);
  std::sort(chains.begin(), chains.end(),
            [](const Chain* a, const Chain* b) { return a->id < b->id; });
  Json jchains = Json::array();
  for (const Chain* c : chains) {
    Json jc;
    jc["id"] = c->id;
    jc["mentions"] = c->mention_ids;
    if (!c->head_mention_id.empty()) jc["head"] = c->head_mention_id;
    jchains.push_back(std::move(jc));
  }
  j["chains"] = std::move(jchains);
  return j;
}

inline Document document_from_json(const Json& j, std::size_t line = 0) {
  if (!j.is_object()) throw ParseError(line, "document must be a JSON object");
  Document doc;
  doc.id = detail::require_string(j, "id", line);
  if (auto it = j.find("genre"); it != j.end()) {
    if (!it->is_string()) throw ParseError(line, "field 'genre' must be a string");
    doc.genre = it->get<std::string>();
  }

  const Json& sentences = detail::require_field(j, "sentences", line);
  if (!sentences.is_array()) throw ParseError(line, "field 'sentences' must be an array");
  for (const Json& sent : sentences) {
    if (!sent.is_array()) throw ParseError(line, "field 'sentences' must hold token arrays");
    std::vector<std::string> toks;
    for (const Json& tok : sent) {
      if (!tok.is_string()) throw ParseError(line, "tokens must be strings");
      toks.push_back(tok.get<std::string>());
    }
    doc.sentences.push_back(std::move(toks));
  }

  const Json& mentions = detail::require_field(j, "mentions", line);
  if (!mentions.is_object()) throw ParseError(line, "field 'mentions' must be an object");
  for (auto it = mentions.begin(); it != mentions.end(); ++it) {
    const Json& jm = it.value();
    if (!jm.is_object()) throw ParseError(line, "mention '" + it.key() + "' must be an object");
    Mention m;
    m.id = it.key();
    m.chain_id = detail::require_string(jm, "chain_id", line);
    const Json& span = detail::require_field(jm, "span", line);
    m.span.sent = detail::require_int(span, "sent", line);
    m.span.start = detail::require_int(span, "start", line);
    m.span.end = detail::require_int(span, "end", line);
    if (jm.contains("category"))
      m.category = detail::parse_vocab<MentionCategory>(jm, "category", line,
                                                        parse_mention_category);
    if (jm.contains("gender"))
      m.gender = detail::parse_vocab<Gender>(jm, "gender", line, parse_gender);
    if (jm.contains("number"))
      m.number = detail::parse_vocab<NumberAttr>(jm, "number", line, parse_number_attr);
    if (jm.contains("animacy"))
      m.animacy = detail::parse_vocab<Animacy>(jm, "animacy", line, parse_animacy);
    if (jm.contains("function"))
      m.function = detail::parse_vocab<CohesiveFunction>(jm, "function", line,
                                                         parse_cohesive_function);
    if (jm.contains("pronoun_type"))
      m.pronoun_type = detail::parse_vocab<PronounType>(jm, "pronoun_type", line,
                                                        parse_pronoun_type);
    doc.mentions.emplace(m.id, std::move(m));
  }

  const Json& chains = detail::require_field(j, "chains", line);
  if (!chains.is_array()) throw ParseError(line, "field 'chains' must be an array");
  for (const Json& jc : chains) {
    if (!jc.is_object()) throw ParseError(line, "chain entries must be objects");
    Chain c;
    c.id = detail::require_string(jc, "id", line);
    const Json& ids = detail::require_field(jc, "mentions", line);
    if (!ids.is_array()) throw ParseError(line, "chain '" + c.id + "': mentions must be an array");
    for (const Json& mid : ids) {
      if (!mid.is_string()) throw ParseError(line, "chain '" + c.id + "': mention ids must be strings");
      c.mention_ids.push_back(mid.get<std::string>());
    }
    if (auto it = jc.find("head"); it != jc.end()) {
      if (!it->is_string()) throw ParseError(line, "chain '" + c.id + "': head must be a string");
      c.head_mention_id = it->get<std::string>();
    }
    doc.chains.push_back(std::move(c));
  }
  return doc;
}

/// One document per line, canonical field order, mention keys sorted,
/// chains sorted by id. parse_jsonl(write_jsonl(docs)) == docs for documents
/// already in canonical chain order.
inline void write_jsonl(const std::vector<Document>& docs, std::ostream& out) {
  for (const Document& doc : docs) out << document_to_json(doc).dump() << '\n';
}

inline Document parse_jsonl_line(const std::string& line, std::size_t lineno) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j, lineno);
}

inline std::vector<Document> parse_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    docs.push_back(parse_jsonl_line(line, lineno));
  }
  return docs;
}

} // namespace corefkit
