#pragma once

#include <cstddef>
#include <string>

#include "adcue/optim.hpp"
#include "adcue/rng.hpp"
#include "adcue/tensor.hpp"

namespace adcue {

enum class PoolMode { kMeanStd, kMean };

struct PoolCache {
  Tensor2 y;        // n x k input
  Tensor2 hidden;   // tanh(y W + b), n x a
  Tensor2 alpha;    // n x 1 weights
  Tensor2 mean;     // 1 x k
  Tensor2 std;      // 1 x k
};

// Weighted mean and std of frames given fixed weights (alpha: n x 1).
// Variance is floored at 0 before the square root.
void pooled_stats(const Tensor2& y, const Tensor2& alpha, Tensor2& mean, Tensor2& std);

// Attentive temporal pooling: e_t = u . tanh(W^T y_t + b), alpha =
// softmax_t(e), output [sum alpha_t y_t, sqrt(sum alpha_t (y_t - mean)^2)].
// Parameters live in the owning ParamSet under "<prefix>.W", ".b", ".u".
class AttentivePool {
 public:
  AttentivePool(ParamSet& params, const std::string& prefix, std::size_t k, std::size_t hidden, Rng& rng,
                PoolMode mode = PoolMode::kMeanStd);

  std::size_t input_dim() const { return k_; }
  std::size_t output_dim() const { return mode_ == PoolMode::kMeanStd ? 2 * k_ : k_; }
  PoolMode mode() const { return mode_; }

  Tensor2 forward(const Tensor2& y, PoolCache* cache = nullptr) const;

  // Adds scale * parameter gradients to the grad buffers and returns dY
  // (unscaled by `scale`, i.e. d out / d y applied to dout).
  Tensor2 backward(const PoolCache& cache, const Tensor2& dout, double scale = 1.0);

 private:
  std::size_t k_;
  PoolMode mode_;
  Parameter* w_;
  Parameter* b_;
  Parameter* u_;
};

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)).
Tensor2 fan_in_uniform(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng);

}  // namespace adcue
