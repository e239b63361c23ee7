#include <algorithm>
#include <cmath>

#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"

namespace adcue {

namespace {

// Mean |v_i - v_{i-1}| over neighbours in the same run, relative to the
// mean of all values, in percent.
double local_perturbation(const std::vector<std::vector<double>>& runs, double overall_mean) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& r : runs) {
    for (std::size_t i = 1; i < r.size(); ++i) {
      acc += std::abs(r[i] - r[i - 1]);
      ++count;
    }
  }
  if (count == 0 || overall_mean <= 0.0) return 0.0;
  return 100.0 * acc / static_cast<double>(count) / overall_mean;
}

// Five-point perturbation quotient: deviation from the centred 5-point mean.
double five_point_quotient(const std::vector<std::vector<double>>& runs, double overall_mean) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& r : runs) {
    for (std::size_t i = 2; i + 2 < r.size(); ++i) {
      const double local = (r[i - 2] + r[i - 1] + r[i] + r[i + 1] + r[i + 2]) / 5.0;
      acc += std::abs(r[i] - local);
      ++count;
    }
  }
  if (count == 0 || overall_mean <= 0.0) return 0.0;
  return 100.0 * acc / static_cast<double>(count) / overall_mean;
}

}  // namespace

PhonationFeatures phonation_features(const AudioBuffer& audio, const F0Contour& contour,
                                     const std::vector<double>& gci, const SpeechConfig& config,
                                     Diagnostics* diag) {
  PhonationFeatures out;
  const double fs = audio.sample_rate;
  const double max_period = 1.0 / config.f0_min;

  std::vector<std::vector<double>> period_runs, amp_runs;
  std::vector<double> periods, amps;
  for (std::size_t i = 0; i + 1 < gci.size(); ++i) {
    const double t = gci[i + 1] - gci[i];
    if (t <= 0.0 || t > max_period) {
      if (!period_runs.empty() && !period_runs.back().empty()) {
        period_runs.emplace_back();
        amp_runs.emplace_back();
      }
      continue;
    }
    const auto a = static_cast<std::size_t>(std::lround(gci[i] * fs));
    const auto b = std::min(audio.samples.size(), static_cast<std::size_t>(std::lround(gci[i + 1] * fs)));
    double peak = 0.0;
    for (std::size_t n = a; n < b; ++n) peak = std::max(peak, std::abs(audio.samples[n]));
    if (period_runs.empty()) {
      period_runs.emplace_back();
      amp_runs.emplace_back();
    }
    period_runs.back().push_back(t);
    amp_runs.back().push_back(peak);
    periods.push_back(t);
    amps.push_back(peak);
  }

  if (periods.size() < 6) {
    if (diag) diag->note("phonation-too-few-periods", std::to_string(periods.size()) + " periods");
  } else {
    const double mean_t = stats::mean(periods);
    const double mean_a = stats::mean(amps);
    out.jitter = local_perturbation(period_runs, mean_t);
    out.ppq = five_point_quotient(period_runs, mean_t);
    out.shimmer = local_perturbation(amp_runs, mean_a);
    out.apq = five_point_quotient(amp_runs, mean_a);
  }

  std::vector<double> voiced_energy, df0;
  for (std::size_t k = 0; k < contour.size(); ++k) {
    if (!contour.voiced[k]) continue;
    voiced_energy.push_back(contour.energy_db[k]);
    if (k > 0 && contour.voiced[k - 1]) df0.push_back(contour.f0[k] - contour.f0[k - 1]);
  }
  if (voiced_energy.empty()) {
    if (diag) diag->note("no-voiced-frames", "log energy and DF0 set to 0");
    return out;
  }
  out.log_energy = stats::mean(voiced_energy);
  out.df0_mean = stats::mean(df0);
  out.df0_std = stats::population_std(df0);
  return out;
}

}  // namespace adcue
