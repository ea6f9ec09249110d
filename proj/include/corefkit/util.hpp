#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corefkit {

/// Exact arithmetic for report values; rounding happens only at emission.
/// Arbitrary precision: averaging per-document ratios accumulates
/// denominators towards the LCM of all per-document chain counts, which
/// outgrows any fixed-width integer on large corpora.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

/// Drops a leading UTF-8 byte-order mark; call on the first line of a file.
inline void strip_utf8_bom(std::string& line) {
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Splits on runs of whitespace; never yields empty tokens.
inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

/// Splits on a single delimiter, preserving empty fields.
inline std::vector<std::string> split_on(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool contains_whitespace(std::string_view s) {
  for (char c : s)
    if (is_space(c)) return true;
  return false;
}

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

/// Fixed-point rendering with half-up rounding, e.g. (5/2, 1) -> "2.5".
inline std::string render_fixed(Rational value, int decimals) {
  bool negative = value < 0;
  if (negative) value = -value;
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  Rational shifted = value * scale + Rational(1, 2);
  BigInt units = numerator(shifted) / denominator(shifted);
  std::string out = BigInt(units / scale).str();
  if (decimals > 0) {
    std::string frac = BigInt(units % scale).str();
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0');
    out += frac;
  }
  if (negative && units > 0) out.insert(out.begin(), '-');
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace corefkit
