#include "adcue/speech_features.hpp"

#include "adcue/error.hpp"

namespace adcue {

const std::array<std::string_view, kSpeechFeatureCount>& speech_feature_names() {
  static const std::array<std::string_view, kSpeechFeatureCount> names = {
      "f1_mean", "f1_std", "f2_mean", "f2_std",
      "gci_var_mean", "gci_var_std", "naq_avg_mean", "naq_avg_std", "naq_var_mean", "naq_var_std",
      "oq_avg_mean", "oq_avg_std", "oq_var_mean", "oq_var_std",
      "hrf_avg_mean", "hrf_avg_std", "hrf_var_mean", "hrf_var_std",
      "jitter", "shimmer", "apq", "ppq", "log_energy", "df0_mean", "df0_std",
      "f0_mean", "f0_std", "f0_max", "f0_min", "f0_skew", "f0_kurt",
      "energy_mean", "energy_std", "energy_skew", "energy_kurt",
      "nvss",
      "voiced_dur_mean", "voiced_dur_std", "voiced_dur_skew", "voiced_dur_kurt", "voiced_dur_max",
      "voiced_dur_min",
      "unvoiced_dur_mean", "unvoiced_dur_std", "unvoiced_dur_skew", "unvoiced_dur_kurt",
      "unvoiced_dur_max", "unvoiced_dur_min",
      "pause_dur_mean", "pause_dur_std", "pause_dur_skew", "pause_dur_kurt", "pause_dur_max",
      "pause_dur_min",
      "pvu", "pu", "uvu", "vvu", "vp", "up"};
  return names;
}

namespace {

template <typename F>
auto with_context(const char* range, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("speech features ") + range + ": " + e.what());
  }
}

}  // namespace

SpeechFeatureVector extract_speech_features(const AudioBuffer& audio, const SpeechConfig& config,
                                            Diagnostics* diag) {
  const auto contour = with_context("25-59 (F0)", [&] { return estimate_f0(audio, config); });
  const auto segments = segment_vup(contour, config);
  SpeechFeatureVector v;

  const auto fm = with_context("0-3", [&] { return formant_stats(audio, contour, config, diag); });
  v[0] = fm.f1_mean;
  v[1] = fm.f1_std;
  v[2] = fm.f2_mean;
  v[3] = fm.f2_std;

  const auto gci = with_context("4-24 (GCI)", [&] { return detect_gci(audio, contour, config); });
  const auto gl = with_context("4-17", [&] { return glottal_descriptors(audio, gci, config, diag); });
  for (std::size_t i = 0; i < gl.values.size(); ++i) v[4 + i] = gl.values[i];

  const auto ph = with_context("18-24", [&] { return phonation_features(audio, contour, gci, config, diag); });
  v[18] = ph.jitter;
  v[19] = ph.shimmer;
  v[20] = ph.apq;
  v[21] = ph.ppq;
  v[22] = ph.log_energy;
  v[23] = ph.df0_mean;
  v[24] = ph.df0_std;

  const auto pr = with_context("25-59", [&] { return prosody_features(contour, segments, diag); });
  for (std::size_t i = 0; i < pr.size(); ++i) v[25 + i] = pr[i];
  return v;
}

}  // namespace adcue
