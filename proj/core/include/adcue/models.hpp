#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <json.hpp>

#include "adcue/attentive_pool.hpp"
#include "adcue/optim.hpp"
#include "adcue/rng.hpp"
#include "adcue/tensor.hpp"

namespace adcue {

// One model input. frames is n x d (embedding rows, or a single row of
// knowledge features for the baseline); knowledge is 1 x m, already
// standardized. label: 0 = AD, 1 = HC.
struct Example {
  std::string sample_id;
  Tensor2 frames;
  Tensor2 knowledge;
  std::size_t label = 0;
};

// Argmax over logits; ties go to the lower class index.
std::size_t predict(const Tensor2& logits);

class Classifier {
 public:
  virtual ~Classifier() = default;
  Classifier() = default;
  Classifier(const Classifier&) = delete;
  Classifier& operator=(const Classifier&) = delete;

  virtual Tensor2 logits(const Example& ex) const = 0;

  // Mean cross-entropy over the batch. Parameter grads are overwritten with
  // the gradient of that mean.
  virtual double loss_and_gradients(std::span<const Example* const> batch) = 0;

  virtual std::string kind() const = 0;
  // Constructor arguments, enough to rebuild the architecture.
  virtual nlohmann::json architecture() const = 0;

  ParamSet& params() { return params_; }
  const ParamSet& params() const { return params_; }

 protected:
  ParamSet params_;
};

struct CrossAttnOutput {
  Tensor2 logits;     // 1 x 2
  Tensor2 attention;  // d x m, rows sum to 1
  Tensor2 y;          // n x m
};

// Knowledge features as keys (identity key projection, d_k = m):
// S = Q^T K / sqrt(m) with Q = X W_q and K the knowledge row repeated n
// times, A = softmax over the m axis, Y = (X W_v) A, then attentive pooling
// and a linear classifier.
class CrossAttnModel : public Classifier {
 public:
  CrossAttnModel(std::size_t m, std::size_t d, Rng& rng, PoolMode pool = PoolMode::kMeanStd);

  std::size_t feature_count() const { return m_; }
  std::size_t embedding_dim() const { return d_; }

  CrossAttnOutput forward(const Tensor2& x_emb, const Tensor2& x_kno) const;

  Tensor2 logits(const Example& ex) const override { return forward(ex.frames, ex.knowledge).logits; }
  double loss_and_gradients(std::span<const Example* const> batch) override;
  std::string kind() const override { return "cross-attention"; }
  nlohmann::json architecture() const override;

 private:
  void check_input(const Tensor2& x_emb, const Tensor2& x_kno) const;

  std::size_t m_;
  std::size_t d_;
  Parameter* wq_;
  Parameter* wv_;
  AttentivePool pool_;
  Parameter* wc_;
  Parameter* bc_;
};

// Baseline: linear projection d_in -> h with layer norm, single-head scaled
// dot-product self-attention over time, attentive pooling, linear
// classifier.
class SelfAttnModel : public Classifier {
 public:
  SelfAttnModel(std::size_t d_in, std::size_t h, Rng& rng, PoolMode pool = PoolMode::kMeanStd);

  std::size_t input_dim() const { return d_in_; }
  std::size_t hidden() const { return h_; }

  struct Trace {
    Tensor2 z, h, q, k, v, p, o, pooled, logits;
    LayerNormCache ln;
    PoolCache pool;
  };
  Tensor2 forward(const Tensor2& x, Trace* trace = nullptr) const;

  Tensor2 logits(const Example& ex) const override { return forward(ex.frames); }
  double loss_and_gradients(std::span<const Example* const> batch) override;
  std::string kind() const override { return "self-attention"; }
  nlohmann::json architecture() const override;

 private:
  std::size_t d_in_;
  std::size_t h_;
  Parameter* wp_;
  Parameter* bp_;
  Parameter* gain_;
  Parameter* offset_;
  Parameter* wq_;
  Parameter* wk_;
  Parameter* wv_;
  AttentivePool pool_;
  Parameter* wc_;
  Parameter* bc_;
};

// Rebuilds a model from architecture() output; parameters are freshly
// initialized and should be restored from a checkpoint.
std::unique_ptr<Classifier> make_classifier(const nlohmann::json& architecture, Rng& rng);

}  // namespace adcue
