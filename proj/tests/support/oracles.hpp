#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library and are only used to check it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace searchenv::testing {

/// Every (i, j) with W[i, i+|s|) == s, W[j-|e|, j) == e and the two
/// segments not overlapping. An empty `e` means "W[i, j) == s".
inline std::vector<std::pair<std::size_t, std::size_t>> span_candidates(
    const std::u32string& w, const std::u32string& s, const std::u32string& e) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + s.size() <= w.size(); ++i) {
    bool head = true;
    for (std::size_t k = 0; k < s.size(); ++k) head = head && w[i + k] == s[k];
    if (!head) continue;
    if (e.empty()) {
      out.emplace_back(i, i + s.size());
      continue;
    }
    for (std::size_t j = i + s.size() + e.size(); j <= w.size(); ++j) {
      bool tail = true;
      for (std::size_t k = 0; k < e.size(); ++k) tail = tail && w[j - e.size() + k] == e[k];
      if (tail) out.emplace_back(i, j);
    }
  }
  return out;
}

inline std::optional<std::pair<std::size_t, std::size_t>> longest_span(
    const std::u32string& w, const std::u32string& s, const std::u32string& e) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (const auto& c : span_candidates(w, s, e)) {
    if (!best || c.second - c.first > best->second - best->first) best = c;
  }
  return best;
}

/// LCS length by the textbook full-table dynamic program.
inline std::size_t lcs_length(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

inline double rouge_l_oracle(const std::u32string& cand, const std::u32string& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  const double l = static_cast<double>(lcs_length(cand, ref));
  if (l == 0) return 0.0;
  const double p = l / static_cast<double>(cand.size());
  const double r = l / static_cast<double>(ref.size());
  return 2 * p * r / (p + r);
}

inline double accuracy_oracle(const std::vector<int>& gold, const std::vector<int>& pred) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == pred[i];
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

/// Mean over n = 2, 3, 4 of |distinct candidate n-grams absent from the
/// concatenated facts| / |distinct candidate n-grams|.
inline double novelty_oracle(const std::u32string& cand, const std::vector<std::u32string>& facts) {
  std::u32string joined;
  for (const auto& f : facts) joined += f;
  double total = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    std::set<std::u32string> grams;
    for (std::size_t i = 0; i + n <= cand.size(); ++i) grams.insert(cand.substr(i, n));
    std::size_t novel = 0;
    for (const auto& g : grams) novel += joined.find(g) == std::u32string::npos;
    total += static_cast<double>(novel) / static_cast<double>(grams.size());
  }
  return total / 3.0;
}

}  // namespace searchenv::testing
