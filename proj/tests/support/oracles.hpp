#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Reference implementations written straight from the definitions, slow on
// purpose and sharing no code with the library.
namespace adcue::testing {

// One MTLD pass: TTR of the open factor recomputed from scratch per token.
inline double mtld_pass_oracle(const std::vector<std::string>& toks, double threshold) {
  double factors = 0.0;
  std::size_t start = 0;
  double ttr = 1.0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::set<std::string> types(toks.begin() + static_cast<long>(start), toks.begin() + static_cast<long>(i) + 1);
    ttr = static_cast<double>(types.size()) / static_cast<double>(i + 1 - start);
    if (ttr <= threshold) {
      factors += 1.0;
      start = i + 1;
      ttr = 1.0;
    }
  }
  factors += (1.0 - ttr) / (1.0 - threshold);
  const double n = static_cast<double>(toks.size());
  return factors == 0.0 ? n / (1.0 - threshold) : n / factors;
}

inline double mtld_oracle(const std::vector<std::string>& toks, double threshold = 0.72) {
  std::vector<std::string> rev(toks.rbegin(), toks.rend());
  return (mtld_pass_oracle(toks, threshold) + mtld_pass_oracle(rev, threshold)) / 2.0;
}

// Memoized recursive edit distance.
inline std::size_t edit_distance_oracle(const std::vector<std::string>& r, const std::vector<std::string>& h) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == r.size()) return h.size() - j;
    if (j == h.size()) return r.size() - i;
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = go(i + 1, j + 1) + (r[i] == h[j] ? 0 : 1);
    best = std::min(best, go(i + 1, j) + 1);
    best = std::min(best, go(i, j + 1) + 1);
    memo[key] = best;
    return best;
  };
  return go(0, 0);
}

// Pairs (a, b) with a > b; ties count one half.
inline double mann_whitney_u_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a)
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  return u;
}

}  // namespace adcue::testing
