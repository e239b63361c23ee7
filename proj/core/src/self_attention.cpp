#include <cmath>

#include "adcue/error.hpp"
#include "adcue/models.hpp"

namespace adcue {

SelfAttnModel::SelfAttnModel(std::size_t d_in, std::size_t h, Rng& rng, PoolMode pool)
    : d_in_(d_in),
      h_(h),
      wp_(&params_.add("proj.W", fan_in_uniform(d_in, h, d_in, rng))),
      bp_(&params_.add("proj.b", Tensor2::Zero(1, static_cast<Eigen::Index>(h)))),
      gain_(&params_.add("ln.gain", Tensor2::Ones(1, static_cast<Eigen::Index>(h)))),
      offset_(&params_.add("ln.offset", Tensor2::Zero(1, static_cast<Eigen::Index>(h)))),
      wq_(&params_.add("attn.W_q", fan_in_uniform(h, h, h, rng))),
      wk_(&params_.add("attn.W_k", fan_in_uniform(h, h, h, rng))),
      wv_(&params_.add("attn.W_v", fan_in_uniform(h, h, h, rng))),
      pool_(params_, "pool", h, h, rng, pool) {
  const std::size_t in = pool_.output_dim();
  wc_ = &params_.add("classifier.W", fan_in_uniform(in, 2, in, rng));
  bc_ = &params_.add("classifier.b", Tensor2::Zero(1, 2));
}

nlohmann::json SelfAttnModel::architecture() const {
  return {{"kind", kind()},
          {"d_in", d_in_},
          {"h", h_},
          {"pool", pool_.mode() == PoolMode::kMean ? "mean" : "mean+std"}};
}

Tensor2 SelfAttnModel::forward(const Tensor2& x, Trace* trace) const {
  if (x.rows() < 1 || x.cols() != static_cast<Eigen::Index>(d_in_)) {
    throw Error(ErrorKind::kShape, "self_attn_forward: expected n x " + std::to_string(d_in_) + " input, got " +
                                       shape_string(x));
  }
  Trace local;
  Trace& t = trace ? *trace : local;
  t.z = add_bias(matmul(x, wp_->value), bp_->value);
  t.h = layer_norm(t.z, gain_->value, offset_->value, &t.ln);
  t.q = matmul(t.h, wq_->value);
  t.k = matmul(t.h, wk_->value);
  t.v = matmul(t.h, wv_->value);
  t.p = softmax_rows(t.q * t.k.transpose() / std::sqrt(static_cast<double>(h_)));
  t.o = t.p * t.v;
  t.pooled = pool_.forward(t.o, &t.pool);
  t.logits = add_bias(matmul(t.pooled, wc_->value), bc_->value);
  return t.logits;
}

double SelfAttnModel::loss_and_gradients(std::span<const Example* const> batch) {
  params_.zero_grad();
  if (batch.empty()) return 0.0;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(h_));
  double loss = 0.0;
  for (const Example* ex : batch) {
    Trace t;
    forward(ex->frames, &t);
    const auto ce = cross_entropy(t.logits, ex->label);
    loss += ce.loss;
    const Tensor2 dlogits = ce.grad * inv_b;
    wc_->grad.noalias() += t.pooled.transpose() * dlogits;
    bc_->grad += dlogits;
    const Tensor2 d_o = pool_.backward(t.pool, dlogits * wc_->value.transpose());
    const Tensor2 dp = d_o * t.v.transpose();
    const Tensor2 dv = t.p.transpose() * d_o;
    const Tensor2 ds = softmax_rows_backward(t.p, dp) * scale;
    const Tensor2 dq = ds * t.k;
    const Tensor2 dk = ds.transpose() * t.q;
    wq_->grad.noalias() += t.h.transpose() * dq;
    wk_->grad.noalias() += t.h.transpose() * dk;
    wv_->grad.noalias() += t.h.transpose() * dv;
    Tensor2 dh = dq * wq_->value.transpose();
    dh.noalias() += dk * wk_->value.transpose();
    dh.noalias() += dv * wv_->value.transpose();
    const auto ln = layer_norm_backward(t.ln, gain_->value, dh);
    gain_->grad += ln.dgain;
    offset_->grad += ln.doffset;
    wp_->grad.noalias() += ex->frames.transpose() * ln.dx;
    bp_->grad += ln.dx.colwise().sum();
  }
  return loss * inv_b;
}

}  // namespace adcue
