#include "adcue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace adcue::stats {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = mean(values);
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.std = std::sqrt(m2);
  // Relative guard: rounding in the mean leaves m2 ~ 1e-32 * mean^2 for
  // constant lists.
  const double scale = std::max(std::abs(s.mean), 1.0);
  if (values.size() < 2 || s.std <= 1e-12 * scale) {
    s.std = 0.0;
    return s;
  }
  s.skewness = m3 / (m2 * s.std);
  s.kurtosis = m4 / (m2 * m2) - 3.0;
  return s;
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

RankSumResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  RankSumResult r;
  const std::size_t n1 = a.size(), n2 = b.size();
  if (n1 == 0 || n2 == 0) {
    r.degenerate = true;
    return r;
  }
  struct Item {
    double value;
    bool from_a;
  };
  std::vector<Item> all;
  all.reserve(n1 + n2);
  for (double v : a) all.push_back({v, true});
  for (double v : b) all.push_back({v, false});
  std::sort(all.begin(), all.end(), [](const Item& x, const Item& y) { return x.value < y.value; });

  const double n = static_cast<double>(n1 + n2);
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].value == all[i].value) ++j;
    const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].from_a) rank_sum_a += mid_rank;
    }
    i = j;
  }
  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  r.u_a = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
  const double mu = dn1 * dn2 / 2.0;
  const double var = dn1 * dn2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) {
    r.degenerate = true;
    r.z = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const double diff = r.u_a - mu;
  const double corrected = std::max(std::abs(diff) - 0.5, 0.0);
  r.z = std::copysign(corrected, diff) / std::sqrt(var);
  r.p_value = std::min(1.0, std::erfc(std::abs(r.z) / std::sqrt(2.0)));
  return r;
}

double cliffs_delta(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::vector<double> sa(a.begin(), a.end());
  std::sort(sa.begin(), sa.end());
  double greater = 0.0, less = 0.0;
  for (double v : b) {
    greater += static_cast<double>(std::lower_bound(sa.begin(), sa.end(), v) - sa.begin());
    less += static_cast<double>(sa.end() - std::upper_bound(sa.begin(), sa.end(), v));
  }
  return (greater - less) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace adcue::stats
