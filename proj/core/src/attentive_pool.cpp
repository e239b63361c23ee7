#include "adcue/attentive_pool.hpp"

#include <cmath>

#include "adcue/error.hpp"

namespace adcue {

namespace {

constexpr double kStdFloor = 1e-12;

}  // namespace

Tensor2 fan_in_uniform(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Tensor2 t(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = rng.uniform(-bound, bound);
  return t;
}

void pooled_stats(const Tensor2& y, const Tensor2& alpha, Tensor2& mean, Tensor2& std) {
  mean = alpha.transpose() * y;
  const Tensor2 centred = y.rowwise() - mean.row(0);
  const Tensor2 var = alpha.transpose() * centred.array().square().matrix();
  std = var.array().max(0.0).sqrt().matrix();
}

AttentivePool::AttentivePool(ParamSet& params, const std::string& prefix, std::size_t k, std::size_t hidden,
                             Rng& rng, PoolMode mode)
    : k_(k), mode_(mode) {
  w_ = &params.add(prefix + ".W", fan_in_uniform(k, hidden, k, rng));
  b_ = &params.add(prefix + ".b", Tensor2::Zero(1, static_cast<Eigen::Index>(hidden)));
  u_ = &params.add(prefix + ".u", fan_in_uniform(hidden, 1, hidden, rng));
}

Tensor2 AttentivePool::forward(const Tensor2& y, PoolCache* cache) const {
  if (y.cols() != static_cast<Eigen::Index>(k_) || y.rows() < 1) {
    throw Error(ErrorKind::kShape, "attentive_pool: expected n x " + std::to_string(k_) + ", got " +
                                       shape_string(y));
  }
  PoolCache local;
  PoolCache& c = cache ? *cache : local;
  c.y = y;
  c.hidden = tanh_forward(add_bias(matmul(y, w_->value), b_->value));
  const Tensor2 scores = c.hidden * u_->value;  // n x 1
  c.alpha = softmax_rows(scores.transpose()).transpose();
  pooled_stats(y, c.alpha, c.mean, c.std);
  if (mode_ == PoolMode::kMean) return c.mean;
  Tensor2 out(1, static_cast<Eigen::Index>(2 * k_));
  out << c.mean, c.std;
  return out;
}

Tensor2 AttentivePool::backward(const PoolCache& c, const Tensor2& dout, double scale) {
  const auto k = static_cast<Eigen::Index>(k_);
  const Tensor2 dmean = dout.leftCols(k);
  Tensor2 dvar = Tensor2::Zero(1, k);
  if (mode_ == PoolMode::kMeanStd) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double s = c.std(0, j);
      dvar(0, j) = s > kStdFloor ? dout(0, k + j) * 0.5 / s : 0.0;
    }
  }
  const Tensor2 centred = c.y.rowwise() - c.mean.row(0);
  // d/dy through the weighted moments (the mean's effect on the variance
  // cancels because sum_t alpha_t (y_t - mean) = 0).
  Tensor2 dy = c.alpha * dmean;
  Tensor2 scaled = centred.array().rowwise() * dvar.row(0).array();
  scaled.array().colwise() *= c.alpha.col(0).array();
  dy += 2.0 * scaled;
  // d/dalpha
  const Tensor2 dalpha = c.y * dmean.transpose() + centred.array().square().matrix() * dvar.transpose();
  const Tensor2 dscores = softmax_rows_backward(c.alpha.transpose(), dalpha.transpose()).transpose();
  u_->grad += scale * (c.hidden.transpose() * dscores);
  const Tensor2 dz = tanh_backward(c.hidden, dscores * u_->value.transpose());
  w_->grad += scale * (c.y.transpose() * dz);
  b_->grad += scale * dz.colwise().sum();
  dy += dz * w_->value.transpose();
  return dy;
}

}  // namespace adcue
