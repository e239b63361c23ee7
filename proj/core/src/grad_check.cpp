#include "adcue/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adcue/rng.hpp"

namespace adcue {

GradCheckResult grad_check(const std::function<double(bool)>& closure, ParamSet& params,
                           const GradCheckOptions& options) {
  params.zero_grad();
  closure(true);
  std::vector<Tensor2> analytic;
  for (const auto& p : params.all()) analytic.push_back(p.grad);

  Rng rng(options.seed);
  GradCheckResult result;
  std::size_t pi = 0;
  for (auto& p : params.all()) {
    const auto total = static_cast<std::size_t>(p.value.size());
    std::vector<std::size_t> coords(total);
    std::iota(coords.begin(), coords.end(), 0);
    if (options.max_coords_per_param > 0 && total > options.max_coords_per_param) {
      rng.shuffle(coords);
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    double* w = p.value.data();
    for (std::size_t i : coords) {
      const double saved = w[i];
      w[i] = saved + options.eps;
      const double up = closure(false);
      w[i] = saved - options.eps;
      const double down = closure(false);
      w[i] = saved;
      const double numeric = (up - down) / (2.0 * options.eps);
      const double a = analytic[pi].data()[i];
      const double denom = std::max({std::abs(a), std::abs(numeric), options.abs_floor});
      const double rel = std::abs(a - numeric) / denom;
      ++result.checked;
      if (rel > result.max_rel_error || result.checked == 1) {
        result.max_rel_error = std::max(result.max_rel_error, rel);
        result.worst_param = p.name;
        result.worst_index = i;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
    ++pi;
  }
  return result;
}

}  // namespace adcue
