#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "adcue/optim.hpp"

namespace adcue {

struct GradCheckOptions {
  double eps = 1e-5;
  std::size_t max_coords_per_param = 0;  // 0 checks every coordinate
  std::uint64_t seed = 1;                // picks the sampled coordinates
  double abs_floor = 1e-6;               // denominator floor for tiny gradients
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// The closure returns the scalar loss; when its argument is true it must
// also write d loss / d param into every param's grad buffer (grads are
// zeroed before that call). Relative error per coordinate is
// |analytic - numeric| / max(|analytic|, |numeric|, abs_floor) with central
// differences.
GradCheckResult grad_check(const std::function<double(bool)>& closure, ParamSet& params,
                           const GradCheckOptions& options = {});

}  // namespace adcue
