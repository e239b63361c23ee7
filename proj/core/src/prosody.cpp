#include "adcue/error.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"

namespace adcue {

namespace {

double ratio(double num, double den, const char* name, Diagnostics* diag) {
  if (den > 0.0) return num / den;
  if (diag) diag->note("zero-denominator", name);
  return 0.0;
}

}  // namespace

std::array<double, kProsodyFeatureCount> prosody_features(const F0Contour& contour,
                                                          const std::vector<Segment>& segments,
                                                          Diagnostics* diag) {
  if (segments.empty()) throw Error(ErrorKind::kInvalidArgument, "prosody_features: empty segment list");
  std::array<double, kProsodyFeatureCount> out{};

  std::vector<double> f0, energy;
  for (std::size_t k = 0; k < contour.size(); ++k) {
    if (!contour.voiced[k]) continue;
    f0.push_back(contour.f0[k]);
    energy.push_back(contour.energy_db[k]);
  }
  if (f0.empty() && diag) diag->note("no-voiced-frames", "F0 and energy statistics set to 0");
  const auto fs = stats::summarize(f0);
  out[0] = fs.mean;
  out[1] = fs.std;
  out[2] = fs.max;
  out[3] = fs.min;
  out[4] = fs.skewness;
  out[5] = fs.kurtosis;
  const auto es = stats::summarize(energy);
  out[6] = es.mean;
  out[7] = es.std;
  out[8] = es.skewness;
  out[9] = es.kurtosis;

  std::array<std::vector<double>, 3> durations;  // voiced, unvoiced, pause
  double total = 0.0;
  for (const auto& s : segments) {
    durations[static_cast<std::size_t>(s.kind)].push_back(s.duration());
    total += s.duration();
  }
  out[10] = ratio(static_cast<double>(durations[0].size()), total, "nvss", diag);
  for (std::size_t kind = 0; kind < 3; ++kind) {
    const auto d = stats::summarize(durations[kind]);
    const std::size_t base = 11 + 6 * kind;
    out[base + 0] = d.mean;
    out[base + 1] = d.std;
    out[base + 2] = d.skewness;
    out[base + 3] = d.kurtosis;
    out[base + 4] = d.max;
    out[base + 5] = d.min;
  }
  double v = 0.0, u = 0.0, p = 0.0;
  for (double d : durations[0]) v += d;
  for (double d : durations[1]) u += d;
  for (double d : durations[2]) p += d;
  out[29] = ratio(p, v + u, "pvu", diag);
  out[30] = ratio(p, u, "pu", diag);
  out[31] = ratio(u, v + u, "uvu", diag);
  out[32] = ratio(v, v + u, "vvu", diag);
  out[33] = ratio(v, p, "vp", diag);
  out[34] = ratio(u, p, "up", diag);
  return out;
}

}  // namespace adcue
