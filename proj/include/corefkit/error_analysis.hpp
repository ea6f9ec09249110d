#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

////////////////////////////////////////////////////////////////////////////////
// Error typology
////////////////////////////////////////////////////////////////////////////////

enum class ErrorKind {
  gender,
  number,
  case_error,
  ambiguous,
  wrong_named_entity,
  wrong_word,
  missing_word,
  wrong_syntactic_structure,
  spelling_error,
  addressee_reference,
  other
};

/// Ten closed categories plus an open "other" bucket carrying its own label.
struct ErrorCategory {
  ErrorKind kind = ErrorKind::other;
  std::string label; // set only for kind == other

  static const char* kind_name(ErrorKind k) {
    switch (k) {
      case ErrorKind::gender: return "gender";
      case ErrorKind::number: return "number";
      case ErrorKind::case_error: return "case";
      case ErrorKind::ambiguous: return "ambiguous";
      case ErrorKind::wrong_named_entity: return "wrong_named_entity";
      case ErrorKind::wrong_word: return "wrong_word";
      case ErrorKind::missing_word: return "missing_word";
      case ErrorKind::wrong_syntactic_structure: return "wrong_syntactic_structure";
      case ErrorKind::spelling_error: return "spelling_error";
      case ErrorKind::addressee_reference: return "addressee_reference";
      default: return "other";
    }
  }

  std::string name() const { return kind == ErrorKind::other ? label : kind_name(kind); }

  /// Known names (spaces and underscores interchangeable, case-insensitive)
  /// map to the closed categories; anything else becomes other(label).
  static ErrorCategory parse(std::string_view raw) {
    std::string norm = to_lower(trim(raw));
    for (char& c : norm)
      if (c == ' ' || c == '-') c = '_';
    for (ErrorKind k :
         {ErrorKind::gender, ErrorKind::number, ErrorKind::case_error, ErrorKind::ambiguous,
          ErrorKind::wrong_named_entity, ErrorKind::wrong_word, ErrorKind::missing_word,
          ErrorKind::wrong_syntactic_structure, ErrorKind::spelling_error,
          ErrorKind::addressee_reference})
      if (norm == kind_name(k)) return {k, ""};
    return {ErrorKind::other, std::string(trim(raw))};
  }

  friend bool operator==(const ErrorCategory& a, const ErrorCategory& b) {
    return a.kind == b.kind && a.label == b.label;
  }
  friend bool operator<(const ErrorCategory& a, const ErrorCategory& b) {
    return std::tie(a.kind, a.label) < std::tie(b.kind, b.label);
  }
};

/// One correctness judgment for one translated mention.
struct ErrorRecord {
  std::string doc_id;
  std::string system;
  std::string mention_id;
  bool correct = true;
  std::optional<ErrorCategory> category; // present exactly when correct == false
  std::string note;                      // free text, e.g. combined-error remarks

  bool operator==(const ErrorRecord&) const = default;
};

/// TSV with header doc_id, system, mention_id, correct, category and an
/// optional trailing note column.
inline std::vector<ErrorRecord> load_error_records(std::istream& in) {
  std::vector<ErrorRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;

    std::vector<std::string> cols = split_on(line, '\t');
    if (lineno == 1) {
      if (cols.size() < 5 || cols[0] != "doc_id" || cols[1] != "system" ||
          cols[2] != "mention_id" || cols[3] != "correct" || cols[4] != "category")
        throw ParseError(1, "expected header: doc_id, system, mention_id, correct, category");
      continue;
    }
    if (cols.size() < 4)
      throw ParseError(lineno, "expected at least 4 tab-separated columns");

    ErrorRecord r;
    r.doc_id = cols[0];
    r.system = cols[1];
    r.mention_id = cols[2];
    std::string correct = to_lower(trim(cols[3]));
    if (correct == "true") r.correct = true;
    else if (correct == "false") r.correct = false;
    else throw ParseError(lineno, "column 'correct' must be true or false, got '" + cols[3] + "'");

    std::string category = cols.size() > 4 ? std::string(trim(cols[4])) : std::string();
    if (!r.correct) {
      if (category.empty())
        throw ParseError(lineno, "missing error category for incorrect mention " + r.mention_id);
      r.category = ErrorCategory::parse(category);
    } else if (!category.empty()) {
      throw ParseError(lineno, "unexpected category for correct mention " + r.mention_id);
    }
    if (cols.size() > 5) r.note = cols[5];
    records.push_back(std::move(r));
  }
  return records;
}

////////////////////////////////////////////////////////////////////////////////
// Aggregation
////////////////////////////////////////////////////////////////////////////////

/// Aggregate error profile for one (system, genre) slice. The two break-downs
/// partition classified errors only: mentions without a cohesive function are
/// outside the antecedent/anaphor split, verb-phrase and clause mentions are
/// outside the NP/pronoun split and counted in vp_clause_errors.
struct ErrorReport {
  std::string system;
  std::string genre;
  long long total_mentions = 0;
  long long total_errors = 0;
  Rational rate{0}; // errors / mentions
  std::map<ErrorCategory, long long> per_category;
  long long antecedent_errors = 0;
  long long anaphor_errors = 0;
  long long np_errors = 0;
  long long pronoun_errors = 0;
  long long vp_clause_errors = 0;
  std::optional<Rational> antecedent_fraction;
  std::optional<Rational> anaphor_fraction;
  std::optional<Rational> np_fraction;
  std::optional<Rational> pronoun_fraction;
};

inline ErrorReport build_report(const std::vector<ErrorRecord>& records,
                                const std::map<std::string, std::vector<Document>>& docs_by_system,
                                const std::string& system, const std::string& genre) {
  ErrorReport rep;
  rep.system = system;
  rep.genre = genre;

  auto sys_it = docs_by_system.find(system);
  if (sys_it == docs_by_system.end())
    throw DataError("no documents loaded for system '" + system + "'");
  std::map<std::string, const Document*> by_doc;
  for (const Document& doc : sys_it->second) {
    by_doc.emplace(doc.id, &doc);
    if (doc.genre == genre)
      rep.total_mentions += static_cast<long long>(doc.mentions.size());
  }

  for (const ErrorRecord& r : records) {
    if (r.system != system) continue;
    auto doc_it = by_doc.find(r.doc_id);
    if (doc_it == by_doc.end())
      throw DataError("cannot resolve mention " + r.mention_id + ": unknown document '" +
                      r.doc_id + "' for system " + system);
    const Document& doc = *doc_it->second;
    if (doc.genre != genre) continue;
    auto m_it = doc.mentions.find(r.mention_id);
    if (m_it == doc.mentions.end())
      throw DataError("cannot resolve mention " + r.mention_id + " in document '" + r.doc_id +
                      "'");
    if (r.correct) continue;

    const Mention& m = m_it->second;
    ++rep.total_errors;
    ++rep.per_category[*r.category];
    if (m.function) {
      if (*m.function == CohesiveFunction::antecedent) ++rep.antecedent_errors;
      else ++rep.anaphor_errors;
    }
    switch (m.category) {
      case MentionCategory::pronoun: ++rep.pronoun_errors; break;
      case MentionCategory::nominal_phrase:
      case MentionCategory::proper_name: ++rep.np_errors; break;
      default: ++rep.vp_clause_errors; break;
    }
  }

  if (rep.total_mentions > 0) rep.rate = Rational(rep.total_errors, rep.total_mentions);
  if (long long n = rep.antecedent_errors + rep.anaphor_errors; n > 0) {
    rep.antecedent_fraction = Rational(rep.antecedent_errors, n);
    rep.anaphor_fraction = Rational(rep.anaphor_errors, n);
  }
  if (long long n = rep.np_errors + rep.pronoun_errors; n > 0) {
    rep.np_fraction = Rational(rep.np_errors, n);
    rep.pronoun_fraction = Rational(rep.pronoun_errors, n);
  }
  return rep;
}

/// Every (system, genre) pair with loaded documents, ordered by system then
/// genre. Record order never affects the result.
inline std::vector<ErrorReport> build_all_reports(
    const std::vector<ErrorRecord>& records,
    const std::map<std::string, std::vector<Document>>& docs_by_system) {
  std::vector<ErrorReport> reports;
  for (const auto& [system, docs] : docs_by_system) {
    std::map<std::string, bool> genres;
    for (const Document& doc : docs) genres.emplace(doc.genre, true);
    for (const auto& [genre, _] : genres)
      reports.push_back(build_report(records, docs_by_system, system, genre));
  }
  return reports;
}

////////////////////////////////////////////////////////////////////////////////
// Report emission
////////////////////////////////////////////////////////////////////////////////

/// "9.6" for 117/1216 — percent at one decimal, half-up.
inline std::string render_percent(const Rational& fraction, int decimals = 1) {
  return render_fixed(fraction * 100, decimals);
}

inline std::string render_fraction(const std::optional<Rational>& fraction, int decimals = 2) {
  return fraction ? render_fixed(*fraction, decimals) : std::string("-");
}

/// Renders a complementary fraction pair. The first member rounds half-up,
/// the second is printed as its complement, so the emitted row sums to
/// exactly 1.00 regardless of rounding ties (1/8 and 7/8 would otherwise
/// both round up).
inline std::pair<std::string, std::string> render_fraction_pair(
    const std::optional<Rational>& first, const std::optional<Rational>& second,
    int decimals = 2) {
  if (!first || !second) return {"-", "-"};
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  Rational shifted = *first * scale + Rational(1, 2);
  BigInt first_units = numerator(shifted) / denominator(shifted);
  BigInt second_units = scale - first_units;
  auto format = [&](const BigInt& units) {
    std::string frac = BigInt(units % scale).str();
    return BigInt(units / scale).str() + "." +
           std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  };
  return {format(first_units), format(second_units)};
}

inline void write_error_reports_tsv(const std::vector<ErrorReport>& reports, std::ostream& out) {
  out << "system\tgenre\ttotal_mentions\ttotal_errors\trate_pct\tant_frac\tana_frac\t"
         "np_frac\tpron_frac\tvp_clause_errors\n";
  for (const ErrorReport& r : reports) {
    auto [ant, ana] = render_fraction_pair(r.antecedent_fraction, r.anaphor_fraction);
    auto [np, pron] = render_fraction_pair(r.np_fraction, r.pronoun_fraction);
    out << r.system << '\t' << r.genre << '\t' << r.total_mentions << '\t' << r.total_errors
        << '\t' << render_percent(r.rate) << '\t' << ant << '\t' << ana << '\t' << np << '\t'
        << pron << '\t' << r.vp_clause_errors << '\n';
  }
}

inline void write_error_reports_json(const std::vector<ErrorReport>& reports, std::ostream& out) {
  auto or_null = [](const std::string& rendered) {
    return rendered == "-" ? std::string("null") : rendered;
  };
  out << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ErrorReport& r = reports[i];
    if (i) out << ",";
    auto [ant, ana] = render_fraction_pair(r.antecedent_fraction, r.anaphor_fraction);
    auto [np, pron] = render_fraction_pair(r.np_fraction, r.pronoun_fraction);
    out << "\n  {\"system\": \"" << r.system << "\", \"genre\": \"" << r.genre
        << "\", \"total_mentions\": " << r.total_mentions
        << ", \"total_errors\": " << r.total_errors << ", \"rate_pct\": " << render_percent(r.rate)
        << ", \"ant_frac\": " << or_null(ant) << ", \"ana_frac\": " << or_null(ana)
        << ", \"np_frac\": " << or_null(np) << ", \"pron_frac\": " << or_null(pron)
        << ", \"vp_clause_errors\": " << r.vp_clause_errors << "}";
  }
  out << "\n]\n";
}

/// Long-format data behind per-category plots: one row per category and slice.
inline void write_category_breakdown_tsv(const std::vector<ErrorReport>& reports,
                                         std::ostream& out) {
  out << "category\tsystem\tgenre\tcount\tfraction\n";
  for (const ErrorReport& r : reports) {
    for (const auto& [category, count] : r.per_category) {
      Rational fraction = r.total_errors > 0 ? Rational(count, r.total_errors) : Rational(0);
      out << category.name() << '\t' << r.system << '\t' << r.genre << '\t' << count << '\t'
          << render_fixed(fraction, 2) << '\n';
    }
  }
}

} // namespace corefkit
