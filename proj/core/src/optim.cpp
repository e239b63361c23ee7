#include "adcue/optim.hpp"

#include <cmath>

#include "adcue/error.hpp"

namespace adcue {

Parameter& ParamSet::add(const std::string& name, Tensor2 value) {
  if (contains(name)) throw Error(ErrorKind::kDuplicateKey, "parameter '" + name + "' already exists");
  Parameter p;
  p.name = name;
  p.grad = Tensor2::Zero(value.rows(), value.cols());
  p.m = Tensor2::Zero(value.rows(), value.cols());
  p.v = Tensor2::Zero(value.rows(), value.cols());
  p.value = std::move(value);
  index_.emplace(name, params_.size());
  params_.push_back(std::move(p));
  return params_.back();
}

Parameter& ParamSet::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorKind::kInvalidArgument, "no parameter named '" + name + "'");
  return params_[it->second];
}

const Parameter& ParamSet::get(const std::string& name) const {
  return const_cast<ParamSet*>(this)->get(name);
}

void ParamSet::zero_grad() {
  for (auto& p : params_) p.grad.setZero(p.value.rows(), p.value.cols());
}

void ParamSet::release_buffers() {
  for (auto& p : params_) {
    p.grad.resize(0, 0);
    p.m.resize(0, 0);
    p.v.resize(0, 0);
  }
}

std::size_t ParamSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p.value.size());
  return n;
}

void adamw_step(ParamSet& params, const AdamWConfig& c) {
  ++params.step;
  const double t = static_cast<double>(params.step);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (auto& p : params.all()) {
    if (p.m.size() != p.value.size()) {
      p.m.setZero(p.value.rows(), p.value.cols());
      p.v.setZero(p.value.rows(), p.value.cols());
    }
    double* __restrict w = p.value.data();
    const double* __restrict g = p.grad.data();
    double* __restrict m = p.m.data();
    double* __restrict v = p.v.data();
    const auto n = p.value.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      w[i] -= c.lr * c.weight_decay * w[i];
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
      w[i] -= c.lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + c.eps);
    }
  }
}

}  // namespace adcue
