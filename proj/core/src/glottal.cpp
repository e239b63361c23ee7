#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "adcue/dsp.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"

namespace adcue {

namespace {

struct VoicedRegion {
  std::size_t begin;  // samples, half-open
  std::size_t end;
  std::size_t first_frame;
  std::size_t last_frame;
};

std::vector<VoicedRegion> voiced_regions(const F0Contour& contour, double fs, std::size_t total) {
  std::vector<VoicedRegion> out;
  const double half_hop = contour.hop_s / 2.0;
  for (std::size_t k = 0; k < contour.size();) {
    if (!contour.voiced[k]) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < contour.size() && contour.voiced[j + 1]) ++j;
    const double t0 = std::max(0.0, contour.times[k] - half_hop);
    const double t1 = contour.times[j] + half_hop;
    const auto b = static_cast<std::size_t>(std::lround(t0 * fs));
    const auto e = std::min(total, static_cast<std::size_t>(std::lround(t1 * fs)));
    if (e > b) out.push_back({b, e, k, j});
    k = j + 1;
  }
  return out;
}

// Frame-wise LPC inverse filtering; each frame's predictor covers one hop
// around its centre.
std::vector<double> lpc_residual(const AudioBuffer& audio, const F0Contour& contour) {
  const double fs = audio.sample_rate;
  const auto& x = audio.samples;
  const auto order = static_cast<std::size_t>(2 + static_cast<int>(fs / 1000.0));
  const auto frame_len = static_cast<std::size_t>(std::lround(contour.frame_s * fs));
  const auto hop = static_cast<std::size_t>(std::lround(contour.hop_s * fs));
  std::vector<double> e(x.size(), 0.0);
  for (std::size_t k = 0; k < contour.size(); ++k) {
    const std::size_t start = k * hop;
    const auto fit = dsp::lpc(std::span<const double>(x).subspan(start, frame_len), order);
    const std::size_t centre = start + frame_len / 2;
    std::size_t lo = k == 0 ? 0 : centre - hop / 2;
    std::size_t hi = k + 1 == contour.size() ? x.size() : centre + (hop - hop / 2);
    hi = std::min(hi, x.size());
    for (std::size_t n = lo; n < hi; ++n) {
      double acc = 0.0;
      for (std::size_t i = 0; i < fit.a.size() && i <= n; ++i) acc += fit.a[i] * x[n - i];
      e[n] = acc;
    }
  }
  return e;
}

// Median period over frames within 100 ms of t; robust to isolated octave
// errors while following intonation.
double local_period(const F0Contour& contour, const VoicedRegion& region, double t, double fs) {
  std::vector<double> f0;
  for (std::size_t k = region.first_frame; k <= region.last_frame; ++k) {
    if (std::abs(contour.times[k] - t) <= 0.1) f0.push_back(contour.f0[k]);
  }
  if (f0.empty()) {
    const std::size_t k = contour.times[region.first_frame] > t ? region.first_frame : region.last_frame;
    return fs / contour.f0[k];
  }
  return fs / stats::percentile(f0, 50.0);
}

}  // namespace

std::vector<double> detect_gci(const AudioBuffer& audio, const F0Contour& contour, const SpeechConfig&) {
  const double fs = audio.sample_rate;
  const auto regions = voiced_regions(contour, fs, audio.samples.size());
  if (regions.empty()) return {};
  const auto residual = lpc_residual(audio, contour);
  std::vector<double> gci;
  for (const auto& region : regions) {
    std::vector<double> s(residual.begin() + static_cast<std::ptrdiff_t>(region.begin),
                          residual.begin() + static_cast<std::ptrdiff_t>(region.end));
    // Flip so that the dominant excitation peaks point downwards.
    double m3 = 0.0, mu = stats::mean(s);
    for (double v : s) m3 += (v - mu) * (v - mu) * (v - mu);
    if (m3 > 0.0) {
      for (double& v : s) v = -v;
    }
    auto argmin = [&](double lo, double hi) {
      const auto a = static_cast<std::size_t>(std::max(0.0, std::ceil(lo)));
      const auto b = std::min(s.size(), static_cast<std::size_t>(std::floor(hi)) + 1);
      std::size_t best = a;
      for (std::size_t i = a; i < b; ++i) {
        if (s[i] < s[best]) best = i;
      }
      return best;
    };
    const auto t_at = [&](double local) { return (static_cast<double>(region.begin) + local) / fs; };
    double period = local_period(contour, region, t_at(0.0), fs);
    std::size_t g = argmin(0.0, std::min(1.3 * period, static_cast<double>(s.size() - 1)));
    gci.push_back(t_at(static_cast<double>(g)));
    while (true) {
      period = local_period(contour, region, t_at(static_cast<double>(g)), fs);
      const double lo = static_cast<double>(g) + 0.7 * period;
      const double hi = std::min(static_cast<double>(g) + 1.3 * period, static_cast<double>(s.size() - 1));
      if (lo > hi) break;
      g = argmin(lo, hi);
      gci.push_back(t_at(static_cast<double>(g)));
    }
  }
  return gci;
}

namespace {

struct FlowEstimate {
  std::vector<double> flow;
  std::vector<double> derivative;
};

std::vector<double> inverse_filter(std::span<const double> analysis, std::span<const double> target,
                                   std::size_t order) {
  const auto fit = dsp::lpc(analysis, order);
  return dsp::fir_filter(fit.a, target);
}

// Two-pass iterative adaptive inverse filtering.
FlowEstimate iaif(std::span<const double> x, double fs, double leak) {
  const auto vt_order = static_cast<std::size_t>(2 + static_cast<int>(fs / 1000.0));
  constexpr std::size_t kGlottalOrder = 4;
  const auto y1 = inverse_filter(x, x, 1);
  const auto g1 = dsp::leaky_integrate(inverse_filter(y1, x, vt_order), leak);
  const auto y2 = dsp::leaky_integrate(inverse_filter(g1, x, kGlottalOrder), leak);
  FlowEstimate out;
  out.derivative = inverse_filter(y2, x, vt_order);
  out.flow = dsp::leaky_integrate(out.derivative, leak);
  return out;
}

struct CycleMeasures {
  double naq;
  double oq;
  double hrf;
};

bool measure_cycle(const FlowEstimate& est, std::size_t a, std::size_t b, CycleMeasures& out) {
  const std::size_t period = b - a;
  if (period < 4 || b >= est.flow.size()) return false;
  std::vector<double> cycle(period);
  const double fa = est.flow[a], fb = est.flow[b];
  for (std::size_t i = 0; i < period; ++i) {
    cycle[i] = est.flow[a + i] - (fa + (fb - fa) * static_cast<double>(i) / static_cast<double>(period));
  }
  const auto [lo, hi] = std::minmax_element(cycle.begin(), cycle.end());
  const double range = *hi - *lo;
  const std::size_t d0 = a + 1;
  const std::size_t d1 = std::min(est.derivative.size(), b + 3);
  double dmin = 0.0;
  for (std::size_t i = d0; i < d1; ++i) dmin = std::min(dmin, est.derivative[i]);
  if (range <= 0.0 || dmin >= 0.0) return false;
  out.naq = range / (std::abs(dmin) * static_cast<double>(period));
  std::size_t open = 0;
  for (double v : cycle) open += (v - *lo) > 0.1 * range ? 1 : 0;
  out.oq = static_cast<double>(open) / static_cast<double>(period);
  std::array<double, 11> mag{};
  for (std::size_t h = 1; h <= 10; ++h) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < period; ++i) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(h * i) / static_cast<double>(period);
      acc += cycle[i] * std::polar(1.0, phase);
    }
    mag[h] = std::abs(acc);
  }
  double upper = 0.0;
  for (std::size_t h = 2; h <= 10; ++h) upper += mag[h];
  if (mag[1] <= 0.0 || upper <= 0.0) return false;
  out.hrf = 20.0 * std::log10(upper / mag[1]);
  return true;
}

}  // namespace

GlottalDescriptors glottal_descriptors(const AudioBuffer& audio, const std::vector<double>& gci, const SpeechConfig& config,
                                       Diagnostics* diag) {
  GlottalDescriptors out;
  if (gci.size() < 3) {
    if (diag) diag->note("glottal-too-few-gci", std::to_string(gci.size()) + " GCIs");
    return out;
  }
  const double fs = audio.sample_rate;
  const double max_period = 1.0 / config.f0_min;

  // Group GCIs into runs without gaps longer than the longest period, then
  // cut each run into fixed-length chunks.
  std::vector<std::vector<double>> chunks;
  std::vector<double> current;
  double chunk_start = gci.front();
  for (std::size_t i = 0; i < gci.size(); ++i) {
    const bool gap = i > 0 && gci[i] - gci[i - 1] > max_period;
    if (gap || gci[i] - chunk_start >= config.glottal_chunk_s) {
      if (!gap) current.push_back(gci[i]);  // share the boundary cycle edge
      if (current.size() >= 3) chunks.push_back(current);
      current.clear();
      chunk_start = gci[i];
    }
    current.push_back(gci[i]);
  }
  if (current.size() >= 3) chunks.push_back(current);

  std::array<std::vector<double>, 7> per_chunk;
  for (const auto& chunk : chunks) {
    const double margin = max_period;
    const auto b = static_cast<std::size_t>(std::max(0.0, std::floor((chunk.front() - margin) * fs)));
    const auto e = std::min(audio.samples.size(),
                            static_cast<std::size_t>(std::ceil((chunk.back() + margin) * fs)) + 1);
    const auto est = iaif(std::span<const double>(audio.samples).subspan(b, e - b), fs, config.integrator_leak);
    std::vector<double> intervals, naq, oq, hrf;
    for (std::size_t i = 0; i + 1 < chunk.size(); ++i) {
      intervals.push_back(chunk[i + 1] - chunk[i]);
      const auto a = static_cast<std::size_t>(std::lround(chunk[i] * fs)) - b;
      const auto z = static_cast<std::size_t>(std::lround(chunk[i + 1] * fs)) - b;
      CycleMeasures m{};
      if (measure_cycle(est, a, z, m)) {
        naq.push_back(m.naq);
        oq.push_back(m.oq);
        hrf.push_back(m.hrf);
      }
    }
    if (naq.empty()) continue;
    const double mean_interval = stats::mean(intervals);
    per_chunk[0].push_back(mean_interval > 0.0 ? stats::population_std(intervals) / mean_interval : 0.0);
    per_chunk[1].push_back(stats::mean(naq));
    per_chunk[2].push_back(stats::population_std(naq));
    per_chunk[3].push_back(stats::mean(oq));
    per_chunk[4].push_back(stats::population_std(oq));
    per_chunk[5].push_back(stats::mean(hrf));
    per_chunk[6].push_back(stats::population_std(hrf));
  }
  out.chunks = per_chunk[0].size();
  if (out.chunks == 0) {
    if (diag) diag->note("glottal-no-chunks", "no chunk with measurable cycles");
    return out;
  }
  for (std::size_t d = 0; d < 7; ++d) {
    out.values[2 * d] = stats::mean(per_chunk[d]);
    out.values[2 * d + 1] = stats::population_std(per_chunk[d]);
  }
  return out;
}

}  // namespace adcue
