#pragma once

#include <span>
#include <vector>

namespace adcue::stats {

// Population moments. Skewness and excess kurtosis are 0 by convention when
// the standard deviation is 0 or fewer than two values are given; every
// field is 0 for an empty input.
struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // excess: normal -> 0
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

double mean(std::span<const double> values);
double population_std(std::span<const double> values);

// Linear-interpolated percentile, q in [0, 100]. Empty input -> 0.
double percentile(std::span<const double> values, double q);

// Two-sided Mann-Whitney U test with the normal approximation, tie
// correction and a 0.5 continuity correction.
struct RankSumResult {
  double u_a = 0.0;        // pairs (a, b) with a > b, ties count 1/2
  double z = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // zero variance after tie correction
};

RankSumResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Cliff's delta of b relative to a: P(b > a) - P(b < a). Positive when b
// tends to be larger.
double cliffs_delta(std::span<const double> a, std::span<const double> b);

}  // namespace adcue::stats
