#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "corefkit/errors.hpp"
#include "corefkit/model.hpp"
#include "corefkit/util.hpp"

namespace corefkit {

enum class Aggregation { micro, macro };
enum class StatsScope { per_document, corpus_micro, corpus_macro };

inline const char* to_string(StatsScope s) {
  switch (s) {
    case StatsScope::per_document: return "per_document";
    case StatsScope::corpus_micro: return "micro";
    default: return "macro";
  }
}

/// Chain-feature profile of a document or corpus. Counts cover only chains
/// whose size passes the min_chain_size filter; values are exact rationals
/// until report emission.
struct ChainStats {
  long long tokens = 0;
  long long mentions = 0;
  long long chains = 0;
  Rational avg_chain_length{0};
  Rational max_chain_length{0};
  StatsScope scope = StatsScope::per_document;

  bool operator==(const ChainStats&) const = default;
};

inline ChainStats document_stats(const Document& doc, int min_chain_size = 2) {
  if (min_chain_size < 1) throw DataError("min_chain_size must be >= 1");
  ChainStats st;
  for (const auto& sentence : doc.sentences) st.tokens += static_cast<long long>(sentence.size());
  long long max_size = 0;
  for (const Chain& c : doc.chains) {
    auto size = static_cast<long long>(c.size());
    if (size < min_chain_size) continue;
    ++st.chains;
    st.mentions += size;
    max_size = std::max(max_size, size);
  }
  if (st.chains > 0) st.avg_chain_length = Rational(st.mentions, st.chains);
  st.max_chain_length = Rational(max_size);
  return st;
}

/// micro: ratios of corpus totals, max over all chains.
/// macro: totals are still summed, but avg/max are means of the per-document
/// values (fractional "longest chain" figures come from this mode).
inline ChainStats corpus_stats(const std::vector<Document>& docs, int min_chain_size,
                               Aggregation aggregation) {
  if (docs.empty()) throw DataError("corpus_stats: empty document list");

  std::vector<const Document*> ordered;
  ordered.reserve(docs.size());
  for (const Document& d : docs) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const Document* a, const Document* b) { return a->id < b->id; });

  ChainStats total;
  Rational avg_sum{0};
  Rational max_sum{0};
  Rational max_global{0};
  for (const Document* doc : ordered) {
    ChainStats st = document_stats(*doc, min_chain_size);
    total.tokens += st.tokens;
    total.mentions += st.mentions;
    total.chains += st.chains;
    avg_sum += st.avg_chain_length;
    max_sum += st.max_chain_length;
    max_global = std::max(max_global, st.max_chain_length);
  }
  auto n = static_cast<long long>(ordered.size());
  if (aggregation == Aggregation::micro) {
    total.scope = StatsScope::corpus_micro;
    if (total.chains > 0) total.avg_chain_length = Rational(total.mentions, total.chains);
    total.max_chain_length = max_global;
  } else {
    total.scope = StatsScope::corpus_macro;
    total.avg_chain_length = avg_sum / n;
    total.max_chain_length = max_sum / n;
  }
  return total;
}

////////////////////////////////////////////////////////////////////////////////
// Report emission (1 decimal place, half-up)
////////////////////////////////////////////////////////////////////////////////

struct StatsRow {
  std::string corpus;
  std::string genre;
  ChainStats stats;
};

inline void write_stats_tsv(const std::vector<StatsRow>& rows, std::ostream& out) {
  out << "corpus\tgenre\ttokens\tmentions\tchains\tavg_len\tmax_len\taggregation\n";
  for (const StatsRow& r : rows) {
    out << r.corpus << '\t' << r.genre << '\t' << r.stats.tokens << '\t' << r.stats.mentions
        << '\t' << r.stats.chains << '\t' << render_fixed(r.stats.avg_chain_length, 1) << '\t'
        << render_fixed(r.stats.max_chain_length, 1) << '\t' << to_string(r.stats.scope) << '\n';
  }
}

inline void write_stats_json(const std::vector<StatsRow>& rows, std::ostream& out) {
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StatsRow& r = rows[i];
    if (i) out << ",";
    out << "\n  {\"corpus\": \"" << r.corpus << "\", \"genre\": \"" << r.genre
        << "\", \"tokens\": " << r.stats.tokens << ", \"mentions\": " << r.stats.mentions
        << ", \"chains\": " << r.stats.chains << ", \"avg_len\": "
        << render_fixed(r.stats.avg_chain_length, 1) << ", \"max_len\": "
        << render_fixed(r.stats.max_chain_length, 1) << ", \"aggregation\": \""
        << to_string(r.stats.scope) << "\"}";
  }
  out << "\n]\n";
}

} // namespace corefkit
