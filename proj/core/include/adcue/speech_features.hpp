#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "adcue/audio.hpp"
#include "adcue/diagnostics.hpp"

namespace adcue {

inline constexpr std::size_t kSpeechFeatureCount = 60;

struct SpeechConfig {
  double f0_min = 60.0;
  double f0_max = 400.0;
  double frame_s = 0.040;
  double hop_s = 0.010;
  double voicing_threshold = 0.45;  // minimum normalized cross-correlation
  double gate_window_s = 0.020;     // energy window used for the silence gate
  double silence_percentile = 10.0;
  double silence_margin_db = 3.0;
  double flat_range_db = 10.0;    // p90 - p10 below this: no usable floor
  double flat_silence_db = -60.0; // ...and p90 below this: all silent
  double min_pause_s = 0.100;
  double pre_emphasis = 0.97;
  double max_formant_bandwidth = 400.0;
  double glottal_chunk_s = 0.200;
  double integrator_leak = 0.999;
};

// One entry per analysis frame; frame k is centred at frame_s / 2 + k * hop_s.
struct F0Contour {
  std::vector<double> times;      // frame centres, seconds
  std::vector<double> f0;         // Hz, 0 when unvoiced
  std::vector<double> clarity;    // peak normalized cross-correlation
  std::vector<double> energy_db;  // full-frame mean-square energy
  std::vector<double> gate_db;    // short centred window energy
  std::vector<std::uint8_t> voiced;
  double silence_floor_db = 0.0;  // may be +/-infinity for flat signals
  double frame_s = 0.040;
  double hop_s = 0.010;
  double duration_s = 0.0;

  std::size_t size() const { return times.size(); }
};

// Throws Error(kInvalidArgument) for invalid audio or audio shorter than one
// frame.
F0Contour estimate_f0(const AudioBuffer& audio, const SpeechConfig& config = {});

enum class SegmentKind { kVoiced, kUnvoiced, kPause };
std::string_view to_string(SegmentKind kind);

struct Segment {
  SegmentKind kind;
  double start_s;
  double end_s;

  double duration() const { return end_s - start_s; }
};

// Contiguous spans covering [0, duration_s] exactly. Pause runs shorter than
// min_pause_s take the class of the span before them (after them at the
// start of the signal).
std::vector<Segment> segment_vup(const F0Contour& contour, const SpeechConfig& config = {});

struct FormantStats {
  double f1_mean = 0.0;
  double f1_std = 0.0;
  double f2_mean = 0.0;
  double f2_std = 0.0;
  std::size_t frames = 0;
};

// Per-voiced-frame F1/F2 from LPC roots.
struct FormantTrack {
  std::vector<double> f1;
  std::vector<double> f2;
};

FormantTrack formant_track(const AudioBuffer& audio, const F0Contour& contour,
                           const SpeechConfig& config = {});
FormantStats formant_stats(const AudioBuffer& audio, const F0Contour& contour,
                           const SpeechConfig& config = {}, Diagnostics* diag = nullptr);

// Glottal closure instants in seconds, from the LPC residual within voiced
// runs.
std::vector<double> detect_gci(const AudioBuffer& audio, const F0Contour& contour,
                               const SpeechConfig& config = {});

// Per 200 ms chunk: GCI interval std / mean, then per-cycle NAQ, OQ and HRF
// (dB) averages and standard deviations. Output is the mean and std of each
// of those seven descriptors across chunks, interleaved.
struct GlottalDescriptors {
  std::array<double, 14> values{};
  std::size_t chunks = 0;
};

GlottalDescriptors glottal_descriptors(const AudioBuffer& audio, const std::vector<double>& gci,
                                       const SpeechConfig& config = {},
                                       Diagnostics* diag = nullptr);

struct PhonationFeatures {
  double jitter = 0.0;   // percent
  double shimmer = 0.0;  // percent
  double apq = 0.0;      // 5-point amplitude perturbation quotient, percent
  double ppq = 0.0;      // 5-point period perturbation quotient, percent
  double log_energy = 0.0;
  double df0_mean = 0.0;
  double df0_std = 0.0;
};

PhonationFeatures phonation_features(const AudioBuffer& audio, const F0Contour& contour,
                                     const std::vector<double>& gci, const SpeechConfig& config = {},
                                     Diagnostics* diag = nullptr);

inline constexpr std::size_t kProsodyFeatureCount = 35;

std::array<double, kProsodyFeatureCount> prosody_features(const F0Contour& contour,
                                                          const std::vector<Segment>& segments,
                                                          Diagnostics* diag = nullptr);

const std::array<std::string_view, kSpeechFeatureCount>& speech_feature_names();

struct SpeechFeatureVector {
  std::array<double, kSpeechFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

SpeechFeatureVector extract_speech_features(const AudioBuffer& audio, const SpeechConfig& config = {},
                                            Diagnostics* diag = nullptr);

}  // namespace adcue
