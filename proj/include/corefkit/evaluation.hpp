#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "corefkit/enrichment.hpp"
#include "corefkit/errors.hpp"

namespace corefkit {

inline constexpr int kBleuOrder = 4;

enum class BleuSmoothing { none, add_one };

/// Raw corpus-level counts; additive across segments, so scoring commutes
/// with any segment partition.
struct BleuStats {
  std::array<long long, kBleuOrder> matched{};
  std::array<long long, kBleuOrder> total{};
  long long hyp_length = 0;
  long long ref_length = 0;

  BleuStats& operator+=(const BleuStats& o) {
    for (int n = 0; n < kBleuOrder; ++n) {
      matched[static_cast<std::size_t>(n)] += o.matched[static_cast<std::size_t>(n)];
      total[static_cast<std::size_t>(n)] += o.total[static_cast<std::size_t>(n)];
    }
    hyp_length += o.hyp_length;
    ref_length += o.ref_length;
    return *this;
  }
};

struct BleuScore {
  double score = 0.0;                                // 0..100
  std::array<double, kBleuOrder> ngram_precisions{}; // values entering the geometric mean
  double brevity_penalty = 1.0;
  long long hyp_length = 0;
  long long ref_length = 0;
};

namespace detail {

inline void count_ngrams(const std::vector<std::string>& tokens, int n,
                         std::map<std::string, long long>& out) {
  if (static_cast<int>(tokens.size()) < n) return;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + static_cast<std::size_t>(k)];
    }
    ++out[key];
  }
}

} // namespace detail

/// Clipped n-gram matches of one hypothesis segment against its single
/// reference, orders 1..4.
inline BleuStats segment_bleu_stats(const std::vector<std::string>& hyp,
                                    const std::vector<std::string>& ref) {
  BleuStats st;
  st.hyp_length = static_cast<long long>(hyp.size());
  st.ref_length = static_cast<long long>(ref.size());
  for (int n = 1; n <= kBleuOrder; ++n) {
    if (static_cast<int>(hyp.size()) < n) continue;
    std::map<std::string, long long> hyp_counts, ref_counts;
    detail::count_ngrams(hyp, n, hyp_counts);
    detail::count_ngrams(ref, n, ref_counts);
    long long matched = 0, total = 0;
    for (const auto& [gram, count] : hyp_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    st.matched[static_cast<std::size_t>(n - 1)] = matched;
    st.total[static_cast<std::size_t>(n - 1)] = total;
  }
  return st;
}

/// BLEU-4 from accumulated counts. Orders absent from the hypothesis (total
/// of zero) contribute a neutral factor, keeping BLEU(h, h) at 100 for short
/// segments. Without smoothing, any zero precision over a non-empty total
/// zeroes the score; add_one smoothing adds one to numerator and denominator
/// for orders above unigram.
inline BleuScore score_from_stats(const BleuStats& st, BleuSmoothing smoothing = BleuSmoothing::none) {
  BleuScore out;
  out.hyp_length = st.hyp_length;
  out.ref_length = st.ref_length;
  out.ngram_precisions.fill(1.0);
  if (st.hyp_length == 0) {
    out.brevity_penalty = 0.0;
    return out;
  }

  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < kBleuOrder; ++n) {
    long long matched = st.matched[static_cast<std::size_t>(n)];
    long long total = st.total[static_cast<std::size_t>(n)];
    if (smoothing == BleuSmoothing::add_one && n > 0) {
      ++matched;
      ++total;
    }
    if (total == 0) continue; // neutral factor
    double p = static_cast<double>(matched) / static_cast<double>(total);
    out.ngram_precisions[static_cast<std::size_t>(n)] = p;
    if (p <= 0.0) zero = true;
    else log_sum += std::log(p) / kBleuOrder;
  }

  out.brevity_penalty =
      st.hyp_length >= st.ref_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(st.ref_length) / static_cast<double>(st.hyp_length));
  out.score = zero ? 0.0 : out.brevity_penalty * std::exp(log_sum) * 100.0;
  return out;
}

/// Corpus-level BLEU-4 with brevity penalty, single reference per segment.
inline BleuScore corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                             const std::vector<std::vector<std::string>>& references,
                             BleuSmoothing smoothing = BleuSmoothing::none) {
  if (hypotheses.size() != references.size())
    throw DataError("hypothesis/reference segment count mismatch: " +
                    std::to_string(hypotheses.size()) + " vs " +
                    std::to_string(references.size()));
  if (hypotheses.empty()) throw DataError("empty corpus");
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    total += segment_bleu_stats(hypotheses[i], references[i]);
  return score_from_stats(total, smoothing);
}

/// Indices (corpus order) of the sentences that received at least one
/// insertion; this is the slice evaluated as the coreference subset.
inline std::vector<std::size_t> select_coref_subset(
    const std::vector<EnrichedSentence>& enriched) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < enriched.size(); ++i)
    if (!enriched[i].insertions.empty()) out.push_back(i);
  return out;
}

////////////////////////////////////////////////////////////////////////////////
// Report emission
////////////////////////////////////////////////////////////////////////////////

struct EvalRow {
  std::string system;
  std::string genre;
  std::string slice;  // "all" or "coref"
  double bleu = 0.0;
  std::string meteor; // externally computed, passed through; "-" if absent
};

inline void write_eval_tsv(const std::vector<EvalRow>& rows, std::ostream& out) {
  char buf[32];
  out << "system\tgenre\tslice\tbleu\tmeteor\n";
  for (const EvalRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.2f", r.bleu);
    out << r.system << '\t' << r.genre << '\t' << r.slice << '\t' << buf << '\t'
        << (r.meteor.empty() ? "-" : r.meteor) << '\n';
  }
}

inline void write_eval_json(const std::vector<EvalRow>& rows, std::ostream& out) {
  char buf[32];
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const EvalRow& r = rows[i];
    if (i) out << ",";
    std::snprintf(buf, sizeof buf, "%.2f", r.bleu);
    out << "\n  {\"system\": \"" << r.system << "\", \"genre\": \"" << r.genre
        << "\", \"slice\": \"" << r.slice << "\", \"bleu\": " << buf << ", \"meteor\": ";
    if (r.meteor.empty()) out << "null";
    else out << '"' << r.meteor << '"';
    out << "}";
  }
  out << "\n]\n";
}

} // namespace corefkit
