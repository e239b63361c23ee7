#include "adcue/interpret.hpp"

#include <algorithm>
#include <numeric>

#include "adcue/error.hpp"

namespace adcue {

MeanAttention collect_mean_attention(const CrossAttnModel& model, std::span<const Example> test_set) {
  if (test_set.empty()) throw Error(ErrorKind::kInvalidArgument, "collect_mean_attention: empty test set");
  MeanAttention out;
  out.total = test_set.size();
  for (const auto& ex : test_set) {
    const auto o = model.forward(ex.frames, ex.knowledge);
    if (predict(o.logits) != ex.label) continue;
    if (out.used == 0) {
      out.mean = o.attention;
    } else {
      out.mean += o.attention;
    }
    ++out.used;
  }
  if (out.used == 0) {
    throw Error(ErrorKind::kNothingToInterpret,
                "no test sample was predicted correctly; there is no attention to aggregate");
  }
  out.mean /= static_cast<double>(out.used);
  return out;
}

Tensor2 mean_matrix(std::span<const Tensor2> matrices) {
  if (matrices.empty()) throw Error(ErrorKind::kInvalidArgument, "mean_matrix: no matrices");
  Tensor2 acc = matrices.front();
  for (std::size_t i = 1; i < matrices.size(); ++i) {
    if (matrices[i].rows() != acc.rows() || matrices[i].cols() != acc.cols()) {
      throw Error(ErrorKind::kShape, "mean_matrix: " + shape_string(matrices[i]) + " vs " + shape_string(acc));
    }
    acc += matrices[i];
  }
  return acc / static_cast<double>(matrices.size());
}

std::vector<double> feature_salience(const Tensor2& a) {
  if (!a.allFinite()) throw Error(ErrorKind::kNumeric, "feature_salience: non-finite attention");
  std::vector<double> s(static_cast<std::size_t>(a.cols()), 0.0);
  for (Eigen::Index j = 0; j < a.cols(); ++j) s[static_cast<std::size_t>(j)] = a.col(j).sum();
  // s_j = 1 / sum_k (c_k / c_j): equal column sums give exactly 1/m.
  std::vector<double> out(s.size(), 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] <= 0.0) continue;
    double ratio_sum = 0.0;
    for (double c : s) ratio_sum += c / s[j];
    out[j] = 1.0 / ratio_sum;
  }
  return out;
}

std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

ConditionComparison compare_conditions(std::span<const double> a, std::span<const double> b,
                                       std::span<const std::string> names) {
  if (a.size() != b.size() || names.size() != a.size()) {
    throw Error(ErrorKind::kShape, "compare_conditions: feature counts differ (" + std::to_string(a.size()) +
                                       ", " + std::to_string(b.size()) + ", " + std::to_string(names.size()) +
                                       " names)");
  }
  ConditionComparison c;
  c.names.assign(names.begin(), names.end());
  c.a.assign(a.begin(), a.end());
  c.b.assign(b.begin(), b.end());
  for (std::size_t j = 0; j < a.size(); ++j) c.diff.push_back(a[j] - b[j]);
  c.ranked = top_k(c.diff, c.diff.size());
  return c;
}

std::vector<FeatureShift> feature_shift_report(std::span<const std::vector<double>> group_a,
                                               std::span<const std::vector<double>> group_b,
                                               std::span<const std::string> names) {
  if (group_a.size() < 2 || group_b.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "feature_shift_report: need at least 2 samples per group");
  }
  const std::size_t m = names.size();
  auto column = [&](std::span<const std::vector<double>> rows, std::size_t j) {
    std::vector<double> col;
    for (const auto& r : rows) {
      if (r.size() != m) throw Error(ErrorKind::kShape, "feature_shift_report: row length differs from names");
      col.push_back(r[j]);
    }
    return col;
  };
  std::vector<FeatureShift> out;
  for (std::size_t j = 0; j < m; ++j) {
    const auto a = column(group_a, j);
    const auto b = column(group_b, j);
    FeatureShift f;
    f.name = names[j];
    f.mean_a = stats::mean(a);
    f.mean_b = stats::mean(b);
    f.test = stats::mann_whitney_u(a, b);
    f.cliffs_delta = stats::cliffs_delta(a, b);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace adcue
