#include <cmath>

#include "adcue/error.hpp"
#include "adcue/training.hpp"

namespace adcue {

void Standardizer::fit(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw Error(ErrorKind::kInvalidArgument, "Standardizer::fit: no rows");
  const std::size_t m = rows.front().size();
  mean_.assign(m, 0.0);
  scale_.assign(m, 0.0);
  for (const auto& r : rows) {
    if (r.size() != m) throw Error(ErrorKind::kShape, "Standardizer::fit: ragged feature rows");
    for (std::size_t j = 0; j < m; ++j) mean_[j] += r[j];
  }
  const auto n = static_cast<double>(rows.size());
  for (double& v : mean_) v /= n;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < m; ++j) scale_[j] += (r[j] - mean_[j]) * (r[j] - mean_[j]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double sd = std::sqrt(scale_[j] / n);
    scale_[j] = sd > 1e-12 * std::max(1.0, std::abs(mean_[j])) ? sd : 1.0;
  }
}

std::vector<double> Standardizer::transform(std::span<const double> row) const {
  if (row.size() != mean_.size()) {
    throw Error(ErrorKind::kShape, "Standardizer::transform: expected " + std::to_string(mean_.size()) +
                                       " features, got " + std::to_string(row.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean_[j]) / scale_[j];
  return out;
}

nlohmann::json Standardizer::to_json() const { return {{"mean", mean_}, {"scale", scale_}}; }

Standardizer Standardizer::from_json(const nlohmann::json& j) {
  Standardizer s;
  s.mean_ = j.at("mean").get<std::vector<double>>();
  s.scale_ = j.at("scale").get<std::vector<double>>();
  if (s.mean_.size() != s.scale_.size()) throw Error(ErrorKind::kSchema, "standardizer: mean/scale length mismatch");
  return s;
}

}  // namespace adcue
