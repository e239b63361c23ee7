#include "adcue/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "adcue/error.hpp"

namespace adcue {

std::string shape_string(const Tensor2& t) { return std::to_string(t.rows()) + "x" + std::to_string(t.cols()); }

namespace {

[[noreturn]] void shape_error(const char* op, const Tensor2& a, const Tensor2& b) {
  throw Error(ErrorKind::kShape, std::string(op) + ": incompatible shapes " + shape_string(a) + " and " +
                                     shape_string(b));
}

void require_same(const char* op, const Tensor2& a, const Tensor2& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error(op, a, b);
}

}  // namespace

Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  Tensor2 c(a.rows(), b.cols());
  c.noalias() = a * b;
  return c;
}

MatmulGrads matmul_backward(const Tensor2& a, const Tensor2& b, const Tensor2& dc) {
  if (a.cols() != b.rows()) shape_error("matmul_backward", a, b);
  if (dc.rows() != a.rows() || dc.cols() != b.cols()) shape_error("matmul_backward (upstream)", dc, b);
  MatmulGrads g;
  g.da.noalias() = dc * b.transpose();
  g.db.noalias() = a.transpose() * dc;
  return g;
}

Tensor2 transpose(const Tensor2& a) { return a.transpose(); }

Tensor2 transpose_backward(const Tensor2& dy) { return dy.transpose(); }

Tensor2 add_bias(const Tensor2& x, const Tensor2& bias) {
  if (bias.rows() != 1 || bias.cols() != x.cols()) shape_error("add_bias", x, bias);
  Tensor2 y = x;
  y.rowwise() += bias.row(0);
  return y;
}

BiasGrads add_bias_backward(const Tensor2& dy) { return {dy, dy.colwise().sum()}; }

Tensor2 tanh_forward(const Tensor2& x) { return x.array().tanh().matrix(); }

Tensor2 tanh_backward(const Tensor2& y, const Tensor2& dy) {
  require_same("tanh_backward", y, dy);
  return (dy.array() * (1.0 - y.array().square())).matrix();
}

Tensor2 layer_norm(const Tensor2& x, const Tensor2& gain, const Tensor2& offset, LayerNormCache* cache,
                   double eps) {
  if (gain.rows() != 1 || gain.cols() != x.cols()) shape_error("layer_norm (gain)", x, gain);
  if (offset.rows() != 1 || offset.cols() != x.cols()) shape_error("layer_norm (offset)", x, offset);
  const auto k = static_cast<double>(x.cols());
  Tensor2 xhat(x.rows(), x.cols());
  Eigen::VectorXd inv_std(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mu = x.row(r).sum() / k;
    const auto centred = (x.row(r).array() - mu).eval();
    const double var = centred.square().sum() / k;
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    xhat.row(r) = centred.matrix() * inv_std(r);
  }
  Tensor2 y = (xhat.array().rowwise() * gain.row(0).array()).matrix();
  y.rowwise() += offset.row(0);
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = std::move(inv_std);
  }
  return y;
}

LayerNormGrads layer_norm_backward(const LayerNormCache& cache, const Tensor2& gain, const Tensor2& dy) {
  require_same("layer_norm_backward", cache.xhat, dy);
  const auto k = static_cast<double>(dy.cols());
  LayerNormGrads g;
  g.dgain = (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  g.doffset = dy.colwise().sum();
  const Tensor2 dxhat = (dy.array().rowwise() * gain.row(0).array()).matrix();
  g.dx.resize(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double mean_d = dxhat.row(r).sum() / k;
    const double mean_dx = dxhat.row(r).dot(cache.xhat.row(r)) / k;
    g.dx.row(r) = cache.inv_std(r) *
                  (dxhat.row(r).array() - mean_d - cache.xhat.row(r).array() * mean_dx).matrix();
  }
  return g;
}

Tensor2 softmax_rows(const Tensor2& x) {
  Tensor2 y(x.rows(), x.cols());
  const Eigen::Index c = x.cols();
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double* in = x.data() + r * c;
    double* out = y.data() + r * c;
    double mx = in[0];
    for (Eigen::Index j = 1; j < c; ++j) mx = std::max(mx, in[j]);
    for (Eigen::Index j = 0; j < c; ++j) out[j] = in[j] - mx;
  }
  // One contiguous pass keeps the vectorized exp busy for narrow rows.
  y.array() = y.array().exp();
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    double* out = y.data() + r * c;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < c; ++j) sum += out[j];
    for (Eigen::Index j = 0; j < c; ++j) out[j] /= sum;
  }
  return y;
}

Tensor2 softmax_rows_backward(const Tensor2& y, const Tensor2& dy) {
  require_same("softmax_rows_backward", y, dy);
  const Eigen::VectorXd dots = (y.array() * dy.array()).rowwise().sum().matrix();
  return (y.array() * (dy.array().colwise() - dots.array())).matrix();
}

CrossEntropyResult cross_entropy(const Tensor2& logits, std::size_t label) {
  if (logits.rows() != 1 || logits.cols() < 1) {
    throw Error(ErrorKind::kShape, "cross_entropy: logits must be 1xC, got " + shape_string(logits));
  }
  if (label >= static_cast<std::size_t>(logits.cols())) {
    throw Error(ErrorKind::kInvalidArgument,
                "cross_entropy: label " + std::to_string(label) + " out of range for " +
                    std::to_string(logits.cols()) + " classes");
  }
  const double mx = logits.maxCoeff();
  const double lse = mx + std::log((logits.array() - mx).exp().sum());
  CrossEntropyResult r;
  r.loss = lse - logits(0, static_cast<Eigen::Index>(label));
  r.grad = (logits.array() - lse).exp().matrix();
  r.grad(0, static_cast<Eigen::Index>(label)) -= 1.0;
  return r;
}

}  // namespace adcue
