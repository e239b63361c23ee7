#include <algorithm>
#include <cmath>
#include <limits>

#include "adcue/dsp.hpp"
#include "adcue/error.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"

namespace adcue {

namespace {

struct Peak {
  double lag = 0.0;
  double clarity = 0.0;
};

// Normalized cross-correlation local maxima over [lag_lo, lag_hi], each
// refined by parabolic interpolation.
std::vector<Peak> nccf_peaks(std::span<const double> x, std::size_t lag_lo, std::size_t lag_hi) {
  const std::size_t n = x.size();
  // prefix[i] = sum of x[0..i)^2
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i] * x[i];
  const std::size_t first = lag_lo > 1 ? lag_lo - 1 : 1;
  const std::size_t last = std::min(lag_hi + 1, n - 1);
  std::vector<double> r(last + 1, 0.0);
  for (std::size_t lag = first; lag <= last; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += x[i] * x[i + lag];
    const double e0 = prefix[n - lag];
    const double e1 = prefix[n] - prefix[lag];
    const double denom = std::sqrt(e0 * e1);
    r[lag] = denom > 0.0 ? acc / denom : 0.0;
  }

  std::vector<Peak> peaks;
  const std::size_t hi = std::min(lag_hi, last);
  for (std::size_t lag = lag_lo; lag <= hi; ++lag) {
    const bool left = lag == first || r[lag] >= r[lag - 1];
    const bool right = lag == last || r[lag] > r[lag + 1];
    if (!left || !right || r[lag] <= 0.0) continue;
    Peak p{static_cast<double>(lag), r[lag]};
    if (lag > first && lag < last) {
      const double a = r[lag - 1], b = r[lag], c = r[lag + 1];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) {
        const double delta = 0.5 * (a - c) / denom;
        if (std::abs(delta) < 1.0) {
          p.lag += delta;
          p.clarity = b - 0.25 * (a - c) * delta;
        }
      }
    }
    peaks.push_back(p);
  }
  return peaks;
}

// Shortest lag within 10% of the strongest peak.
Peak first_pass_pick(const std::vector<Peak>& peaks) {
  double best = 0.0;
  for (const auto& p : peaks) best = std::max(best, p.clarity);
  for (const auto& p : peaks) {
    if (p.clarity >= 0.9 * best) return p;
  }
  return {};
}

// Strongest peak after a cost per octave of distance from the reference.
Peak second_pass_pick(const std::vector<Peak>& peaks, double fs, double reference_f0) {
  constexpr double kOctaveCost = 0.5;
  Peak pick;
  double best = -1e300;
  for (const auto& p : peaks) {
    const double score = p.clarity - kOctaveCost * std::abs(std::log2(fs / p.lag / reference_f0));
    if (score > best) {
      best = score;
      pick = p;
    }
  }
  return pick;
}

double silence_floor(const std::vector<double>& gate_db, const SpeechConfig& config) {
  const double p10 = stats::percentile(gate_db, config.silence_percentile);
  const double p90 = stats::percentile(gate_db, 100.0 - config.silence_percentile);
  if (p90 - p10 >= config.flat_range_db) return p10 + config.silence_margin_db;
  if (p90 < config.flat_silence_db) return std::numeric_limits<double>::infinity();
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

F0Contour estimate_f0(const AudioBuffer& audio, const SpeechConfig& config) {
  validate_audio(audio);
  if (config.f0_min <= 0.0 || config.f0_max <= config.f0_min) {
    throw Error(ErrorKind::kInvalidArgument, "estimate_f0: need 0 < f0_min < f0_max");
  }
  const double fs = audio.sample_rate;
  const auto frame_len = static_cast<std::size_t>(std::lround(config.frame_s * fs));
  const auto hop = static_cast<std::size_t>(std::lround(config.hop_s * fs));
  const auto gate_len = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(config.gate_window_s * fs)));
  if (frame_len == 0 || hop == 0) throw Error(ErrorKind::kInvalidArgument, "estimate_f0: frame and hop must be positive");
  const auto& x = audio.samples;
  if (x.size() < frame_len) {
    throw Error(ErrorKind::kInvalidArgument,
                "estimate_f0: audio has " + std::to_string(x.size()) + " samples, shorter than one " +
                    std::to_string(frame_len) + "-sample frame");
  }
  const auto lag_lo = static_cast<std::size_t>(std::floor(fs / config.f0_max));
  const auto lag_hi = std::min(static_cast<std::size_t>(std::ceil(fs / config.f0_min)), frame_len - 2);

  F0Contour c;
  c.frame_s = static_cast<double>(frame_len) / fs;
  c.hop_s = static_cast<double>(hop) / fs;
  c.duration_s = audio.duration();
  const std::size_t frames = 1 + (x.size() - frame_len) / hop;
  c.times.resize(frames);
  c.f0.assign(frames, 0.0);
  c.clarity.assign(frames, 0.0);
  c.energy_db.resize(frames);
  c.gate_db.resize(frames);
  c.voiced.assign(frames, 0);

  std::vector<std::vector<Peak>> peaks(frames);
  std::vector<double> buf(frame_len);
  for (std::size_t k = 0; k < frames; ++k) {
    const std::size_t start = k * hop;
    c.times[k] = (static_cast<double>(start) + frame_len / 2.0) / fs;
    double mu = 0.0;
    for (std::size_t i = 0; i < frame_len; ++i) mu += x[start + i];
    mu /= static_cast<double>(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) buf[i] = x[start + i] - mu;
    c.energy_db[k] = dsp::energy_db(dsp::mean_square(buf));
    const std::size_t centre = start + frame_len / 2;
    const std::size_t g0 = centre >= gate_len / 2 ? centre - gate_len / 2 : 0;
    const std::size_t g1 = std::min(x.size(), g0 + gate_len);
    c.gate_db[k] = dsp::energy_db(dsp::mean_square(std::span<const double>(x).subspan(g0, g1 - g0)));
    if (lag_lo < lag_hi) peaks[k] = nccf_peaks(buf, std::max<std::size_t>(lag_lo, 2), lag_hi);
  }

  c.silence_floor_db = silence_floor(c.gate_db, config);
  auto accept = [&](std::size_t k, const Peak& p) {
    if (p.lag <= 0.0 || p.clarity < config.voicing_threshold) return false;
    if (!(c.gate_db[k] > c.silence_floor_db)) return false;
    const double f0 = fs / p.lag;
    return f0 >= config.f0_min && f0 <= config.f0_max;
  };
  std::vector<double> first_f0;
  for (std::size_t k = 0; k < frames; ++k) {
    const Peak p = first_pass_pick(peaks[k]);
    if (accept(k, p)) first_f0.push_back(fs / p.lag);
  }
  if (first_f0.empty()) {
    for (std::size_t k = 0; k < frames; ++k) c.clarity[k] = first_pass_pick(peaks[k]).clarity;
    return c;
  }
  // Re-pick against the utterance median to suppress octave jumps.
  const double reference = stats::percentile(first_f0, 50.0);
  for (std::size_t k = 0; k < frames; ++k) {
    const Peak p = second_pass_pick(peaks[k], fs, reference);
    c.clarity[k] = p.clarity;
    if (!accept(k, p)) continue;
    c.f0[k] = fs / p.lag;
    c.voiced[k] = 1;
  }
  return c;
}

}  // namespace adcue
