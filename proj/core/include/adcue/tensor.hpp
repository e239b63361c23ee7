#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>

namespace adcue {

using Tensor2 = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// "3x4"
std::string shape_string(const Tensor2& t);

// Every op checks shapes and throws Error(kShape) naming the op and the
// offending shapes. Backward functions take the upstream gradient of the
// op's output and return gradients for each input.

Tensor2 matmul(const Tensor2& a, const Tensor2& b);
struct MatmulGrads {
  Tensor2 da;
  Tensor2 db;
};
MatmulGrads matmul_backward(const Tensor2& a, const Tensor2& b, const Tensor2& dc);

Tensor2 transpose(const Tensor2& a);
Tensor2 transpose_backward(const Tensor2& dy);

// x (n x k) + bias (1 x k) broadcast over rows.
Tensor2 add_bias(const Tensor2& x, const Tensor2& bias);
struct BiasGrads {
  Tensor2 dx;
  Tensor2 dbias;
};
BiasGrads add_bias_backward(const Tensor2& dy);

Tensor2 tanh_forward(const Tensor2& x);
// Takes the forward output y = tanh(x).
Tensor2 tanh_backward(const Tensor2& y, const Tensor2& dy);

inline constexpr double kLayerNormEps = 1e-5;

struct LayerNormCache {
  Tensor2 xhat;            // normalized input, before gain/offset
  Eigen::VectorXd inv_std; // per row
};
// Normalizes each row, then y = xhat * gain + offset (gain, offset 1 x k).
Tensor2 layer_norm(const Tensor2& x, const Tensor2& gain, const Tensor2& offset, LayerNormCache* cache = nullptr,
                   double eps = kLayerNormEps);
struct LayerNormGrads {
  Tensor2 dx;
  Tensor2 dgain;
  Tensor2 doffset;
};
LayerNormGrads layer_norm_backward(const LayerNormCache& cache, const Tensor2& gain, const Tensor2& dy);

Tensor2 softmax_rows(const Tensor2& x);
// Takes the forward output y = softmax_rows(x).
Tensor2 softmax_rows_backward(const Tensor2& y, const Tensor2& dy);

struct CrossEntropyResult {
  double loss = 0.0;
  Tensor2 grad;  // d loss / d logits = softmax - one_hot
};
// logits 1 x C, label in [0, C).
CrossEntropyResult cross_entropy(const Tensor2& logits, std::size_t label);

}  // namespace adcue
