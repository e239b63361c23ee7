#include <cmath>

#include "adcue/error.hpp"
#include "adcue/models.hpp"

namespace adcue {

std::size_t predict(const Tensor2& logits) {
  std::size_t best = 0;
  for (Eigen::Index j = 1; j < logits.cols(); ++j) {
    if (logits(0, j) > logits(0, static_cast<Eigen::Index>(best))) best = static_cast<std::size_t>(j);
  }
  return best;
}

namespace {

PoolMode pool_mode_from(const nlohmann::json& j) {
  return j.value("pool", std::string("mean+std")) == "mean" ? PoolMode::kMean : PoolMode::kMeanStd;
}

const char* pool_mode_name(PoolMode mode) { return mode == PoolMode::kMean ? "mean" : "mean+std"; }

}  // namespace

CrossAttnModel::CrossAttnModel(std::size_t m, std::size_t d, Rng& rng, PoolMode pool)
    : m_(m),
      d_(d),
      wq_(&params_.add("W_q", fan_in_uniform(d, d, d, rng))),
      wv_(&params_.add("W_v", fan_in_uniform(d, d, d, rng))),
      pool_(params_, "pool", m, m, rng, pool) {
  if (m == 0 || d == 0) throw Error(ErrorKind::kInvalidArgument, "CrossAttnModel: m and d must be positive");
  const std::size_t in = pool_.output_dim();
  wc_ = &params_.add("classifier.W", fan_in_uniform(in, 2, in, rng));
  bc_ = &params_.add("classifier.b", Tensor2::Zero(1, 2));
}

nlohmann::json CrossAttnModel::architecture() const {
  return {{"kind", kind()}, {"m", m_}, {"d", d_}, {"pool", pool_mode_name(pool_.mode())}};
}

void CrossAttnModel::check_input(const Tensor2& x_emb, const Tensor2& x_kno) const {
  if (x_emb.rows() < 1 || x_emb.cols() != static_cast<Eigen::Index>(d_)) {
    throw Error(ErrorKind::kShape, "cross_attn_forward: embeddings must be n x " + std::to_string(d_) + ", got " +
                                       shape_string(x_emb));
  }
  if (x_kno.rows() != 1 || x_kno.cols() != static_cast<Eigen::Index>(m_)) {
    throw Error(ErrorKind::kShape, "cross_attn_forward: model expects 1 x " + std::to_string(m_) +
                                       " knowledge features, got " + shape_string(x_kno));
  }
}

CrossAttnOutput CrossAttnModel::forward(const Tensor2& x_emb, const Tensor2& x_kno) const {
  check_input(x_emb, x_kno);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_));
  // Every row of K equals x_kno, so Q^T K = (sum_t Q_t)^T x_kno and the
  // column sum of X can be projected once.
  const Tensor2 qbar = x_emb.colwise().sum() * wq_->value;  // 1 x d
  CrossAttnOutput out;
  out.attention = softmax_rows(scale * qbar.transpose() * x_kno);
  const Tensor2 v = matmul(x_emb, wv_->value);
  out.y = v * out.attention;
  out.logits = add_bias(matmul(pool_.forward(out.y), wc_->value), bc_->value);
  return out;
}

double CrossAttnModel::loss_and_gradients(std::span<const Example* const> batch) {
  if (batch.empty()) {
    params_.zero_grad();
    return 0.0;
  }
  // W_q and W_v gradients are overwritten below; only the small ones accumulate.
  for (auto& p : params_.all()) {
    if (&p == wq_ || &p == wv_) {
      p.grad.resize(p.value.rows(), p.value.cols());
    } else {
      p.grad.setZero(p.value.rows(), p.value.cols());
    }
  }
  const auto d = static_cast<Eigen::Index>(d_);
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_));

  // Stack the batch so the d x d projections run as single products.
  Eigen::Index total = 0;
  for (const Example* ex : batch) {
    check_input(ex->frames, ex->knowledge);
    total += ex->frames.rows();
  }
  const auto b = static_cast<Eigen::Index>(batch.size());
  Tensor2 x_all(total, d), x_bar(b, d);
  std::vector<Eigen::Index> offset(batch.size());
  Eigen::Index row = 0;
  for (Eigen::Index s = 0; s < b; ++s) {
    const Tensor2& f = batch[static_cast<std::size_t>(s)]->frames;
    offset[static_cast<std::size_t>(s)] = row;
    x_all.middleRows(row, f.rows()) = f;
    x_bar.row(s) = f.colwise().sum();
    row += f.rows();
  }
  Tensor2 q_bar(b, d), v_all(total, d);
  q_bar.noalias() = x_bar * wq_->value;
  v_all.noalias() = x_all * wv_->value;

  Tensor2 dq_bar(b, d), dv_all(total, d);
  double loss = 0.0;
  for (Eigen::Index s = 0; s < b; ++s) {
    const Example& ex = *batch[static_cast<std::size_t>(s)];
    const Eigen::Index n = ex.frames.rows();
    const auto v = v_all.middleRows(offset[static_cast<std::size_t>(s)], n);
    const Tensor2 a = softmax_rows(scale * q_bar.row(s).transpose() * ex.knowledge);
    const Tensor2 y = v * a;
    PoolCache cache;
    const Tensor2 pooled = pool_.forward(y, &cache);
    const Tensor2 logits = add_bias(pooled * wc_->value, bc_->value);
    const auto ce = cross_entropy(logits, ex.label);
    loss += ce.loss;

    const Tensor2 dlogits = ce.grad * inv_b;
    wc_->grad.noalias() += pooled.transpose() * dlogits;
    bc_->grad += dlogits;
    const Tensor2 dy = pool_.backward(cache, dlogits * wc_->value.transpose());
    dv_all.middleRows(offset[static_cast<std::size_t>(s)], n).noalias() = dy * a.transpose();
    const Tensor2 da = v.transpose() * dy;
    const Tensor2 ds = softmax_rows_backward(a, da);
    dq_bar.row(s) = scale * (ds * ex.knowledge.transpose()).transpose();
  }
  wq_->grad.noalias() = x_bar.transpose() * dq_bar;
  wv_->grad.noalias() = x_all.transpose() * dv_all;
  return loss * inv_b;
}

std::unique_ptr<Classifier> make_classifier(const nlohmann::json& arch, Rng& rng) {
  const std::string kind = arch.value("kind", std::string());
  if (kind == "cross-attention") {
    return std::make_unique<CrossAttnModel>(arch.at("m").get<std::size_t>(), arch.at("d").get<std::size_t>(), rng,
                                            pool_mode_from(arch));
  }
  if (kind == "self-attention") {
    return std::make_unique<SelfAttnModel>(arch.at("d_in").get<std::size_t>(), arch.at("h").get<std::size_t>(), rng,
                                           pool_mode_from(arch));
  }
  throw Error(ErrorKind::kSchema, "unknown model kind '" + kind + "'");
}

}  // namespace adcue
