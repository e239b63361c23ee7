#include <algorithm>
#include <cmath>
#include <numbers>

#include "adcue/dsp.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"

namespace adcue {

namespace {

struct Candidate {
  double freq;
  double bandwidth;
};

std::vector<Candidate> candidates(std::span<const double> frame, double fs, const SpeechConfig& config) {
  const auto order = static_cast<std::size_t>(2 + static_cast<int>(fs / 1000.0));
  const auto emphasized = dsp::pre_emphasis(frame, config.pre_emphasis);
  const auto fit = dsp::lpc(emphasized, order);
  std::vector<Candidate> out;
  for (const auto& z : dsp::polynomial_roots(fit.a)) {
    if (z.imag() <= 0.0) continue;
    const double mag = std::abs(z);
    if (mag <= 0.0) continue;
    const double freq = std::atan2(z.imag(), z.real()) * fs / (2.0 * std::numbers::pi);
    const double bw = -std::log(mag) * fs / std::numbers::pi;
    if (freq > 0.0 && bw < config.max_formant_bandwidth) out.push_back({freq, bw});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.freq < b.freq; });
  return out;
}

}  // namespace

FormantTrack formant_track(const AudioBuffer& audio, const F0Contour& contour, const SpeechConfig& config) {
  FormantTrack track;
  const double fs = audio.sample_rate;
  const auto frame_len = static_cast<std::size_t>(std::lround(contour.frame_s * fs));
  for (std::size_t k = 0; k < contour.size(); ++k) {
    if (!contour.voiced[k]) continue;
    const auto start = static_cast<std::size_t>(std::lround(contour.times[k] * fs)) - frame_len / 2;
    if (start + frame_len > audio.samples.size()) continue;
    const auto cands = candidates(std::span<const double>(audio.samples).subspan(start, frame_len), fs, config);
    double f1 = 0.0;
    for (const auto& c : cands) {
      if (c.freq >= 90.0 && c.freq <= 1000.0) {
        f1 = c.freq;
        break;
      }
    }
    if (f1 == 0.0) continue;
    double f2 = 0.0;
    for (const auto& c : cands) {
      if (c.freq > f1 && c.freq >= 600.0 && c.freq <= 3200.0) {
        f2 = c.freq;
        break;
      }
    }
    if (f2 == 0.0) continue;
    track.f1.push_back(f1);
    track.f2.push_back(f2);
  }
  return track;
}

FormantStats formant_stats(const AudioBuffer& audio, const F0Contour& contour, const SpeechConfig& config,
                           Diagnostics* diag) {
  const auto track = formant_track(audio, contour, config);
  FormantStats s;
  s.frames = track.f1.size();
  if (s.frames == 0) {
    if (diag) diag->note("no-formant-frames", "no voiced frame with both F1 and F2");
    return s;
  }
  s.f1_mean = stats::mean(track.f1);
  s.f1_std = stats::population_std(track.f1);
  s.f2_mean = stats::mean(track.f2);
  s.f2_std = stats::population_std(track.f2);
  return s;
}

}  // namespace adcue
