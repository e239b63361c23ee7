#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "adcue/tensor.hpp"

namespace adcue {

struct Parameter {
  std::string name;
  Tensor2 value;
  Tensor2 grad;
  Tensor2 m;  // first moment
  Tensor2 v;  // second moment
};

// Named parameters in insertion order. References returned by add() stay
// valid for the lifetime of the set.
class ParamSet {
 public:
  Parameter& add(const std::string& name, Tensor2 value);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  // Zeroes gradients, reallocating released buffers.
  void zero_grad();
  // Frees gradient and moment buffers of a finished model.
  void release_buffers();
  std::size_t size() const { return params_.size(); }
  std::size_t scalar_count() const;

  std::deque<Parameter>& all() { return params_; }
  const std::deque<Parameter>& all() const { return params_; }

  std::uint64_t step = 0;

 private:
  std::deque<Parameter> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct AdamWConfig {
  double lr = 4e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 1e-5;
};

// Decoupled weight decay (w -= lr * wd * w), then the bias-corrected Adam
// update; increments params.step.
void adamw_step(ParamSet& params, const AdamWConfig& config);

}  // namespace adcue
