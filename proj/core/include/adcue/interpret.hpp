#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "adcue/models.hpp"
#include "adcue/stats.hpp"

namespace adcue {

struct MeanAttention {
  Tensor2 mean;            // d x m, element-wise mean over correct samples
  std::size_t used = 0;    // correctly predicted samples
  std::size_t total = 0;
};

// Throws Error(kNothingToInterpret) when no sample is predicted correctly.
MeanAttention collect_mean_attention(const CrossAttnModel& model, std::span<const Example> test_set);

// Element-wise mean of equally shaped matrices.
Tensor2 mean_matrix(std::span<const Tensor2> matrices);

// Column sums normalized to sum 1.
std::vector<double> feature_salience(const Tensor2& mean_attention);

struct ConditionComparison {
  std::vector<std::string> names;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> diff;         // a - b
  std::vector<std::size_t> ranked;  // feature indices by diff, descending
};

// Throws Error(kShape) when lengths differ.
ConditionComparison compare_conditions(std::span<const double> a, std::span<const double> b,
                                       std::span<const std::string> names);

// Indices of the k largest values, ties to the lower index.
std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k);

struct FeatureShift {
  std::string name;
  double mean_a = 0.0;
  double mean_b = 0.0;
  stats::RankSumResult test;
  double cliffs_delta = 0.0;  // P(b > a) - P(b < a)
};

// Per-feature group comparison of two sample sets (rows = samples). Needs at
// least two rows per side.
std::vector<FeatureShift> feature_shift_report(std::span<const std::vector<double>> group_a,
                                               std::span<const std::vector<double>> group_b,
                                               std::span<const std::string> names);

}  // namespace adcue
