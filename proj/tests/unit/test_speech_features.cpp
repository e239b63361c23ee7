#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adcue/audio.hpp"
#include "adcue/dsp.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/stats.hpp"
#include "test_support.hpp"

using namespace adcue;
using namespace adcue::testing;

namespace {

double voiced_mean_f0(const F0Contour& c) {
  double s = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c.voiced[k]) {
      s += c.f0[k];
      ++n;
    }
  }
  return n ? s / n : 0.0;
}

std::size_t voiced_count(const F0Contour& c) {
  return static_cast<std::size_t>(std::count(c.voiced.begin(), c.voiced.end(), std::uint8_t{1}));
}

std::vector<double> intervals(const std::vector<double>& gci) {
  std::vector<double> iv;
  for (std::size_t i = 1; i < gci.size(); ++i) iv.push_back(gci[i] - gci[i - 1]);
  return iv;
}

}  // namespace

TEST_CASE("dsp primitives") {
  const std::vector<double> x = {1, 2, 3};
  const auto r = dsp::autocorrelation(x, 2);
  CHECK(r[0] == 14);
  CHECK(r[1] == 8);
  CHECK(r[2] == 3);

  // AR(1) with coefficient 0.5 recovered from its exact autocorrelation.
  const std::vector<double> ar = {1.0, 0.5, 0.25};
  const auto l = dsp::levinson_durbin(ar, 1);
  CHECK(l.a[1] == doctest::Approx(-0.5));
  CHECK(l.error == doctest::Approx(0.75));

  const auto roots = dsp::polynomial_roots(std::vector<double>{1.0, -3.0, 2.0});
  std::vector<double> re;
  for (auto z : roots) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[1] == doctest::Approx(2.0));

  const std::vector<double> a = {1.0, -0.5};
  const auto y = dsp::allpole_filter(a, x);
  const auto back = dsp::fir_filter(a, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]));
  CHECK(dsp::energy_db(1.0) == doctest::Approx(10.0 * std::log10(1.0 + 1e-10)));
}

TEST_CASE("wav round trip") {
  TempDir dir("wav");
  const auto a = sawtooth(150, 0.1);
  write_wav(dir / "a.wav", a, WavEncoding::kFloat32);
  const auto b = read_wav(dir / "a.wav");
  REQUIRE(b.samples.size() == a.samples.size());
  CHECK(b.sample_rate == kRate);
  for (std::size_t i = 0; i < a.samples.size(); i += 97) CHECK(b.samples[i] == doctest::Approx(a.samples[i]).epsilon(1e-6));
  write_wav(dir / "p.wav", a);
  const auto c = read_wav(dir / "p.wav");
  for (std::size_t i = 0; i < a.samples.size(); i += 97) CHECK(std::abs(c.samples[i] - a.samples[i]) < 1e-4);
  CHECK(error_kind_of([&] { read_wav(dir / "nope.wav"); }) == ErrorKind::kMissingFile);
  AudioBuffer bad = a;
  bad.samples[3] = std::nan("");
  CHECK(error_kind_of([&] { validate_audio(bad); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("F0 of sawtooth fixtures within 3 Hz") {
  for (double f : {90.0, 120.0, 200.0, 300.0}) {
    const auto c = estimate_f0(sawtooth(f, 2.0));
    CHECK(voiced_count(c) == c.size());
    CHECK(std::abs(voiced_mean_f0(c) - f) <= 3.0);
  }
  // Amplitude does not move the estimate.
  CHECK(std::abs(voiced_mean_f0(estimate_f0(sawtooth(120, 2.0, 0.25))) - 120.0) <= 3.0);
}

TEST_CASE("noise and silence are unvoiced") {
  CHECK(voiced_count(estimate_f0(white_noise(2.0, 0.1, 1))) == 0);
  const auto c = estimate_f0(silence(1.0));
  CHECK(voiced_count(c) == 0);
  const auto s = segment_vup(c);
  REQUIRE(s.size() == 1);
  CHECK(s[0].kind == SegmentKind::kPause);
  CHECK(s[0].start_s == 0.0);
  CHECK(s[0].end_s == doctest::Approx(1.0));
  CHECK(error_kind_of([] { estimate_f0(silence(0.01)); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("voiced / pause / voiced layout") {
  auto a = sawtooth(150, 1.0);
  append(a, silence(1.0));
  append(a, sawtooth(150, 1.0));
  const auto c = estimate_f0(a);
  const auto s = segment_vup(c);
  REQUIRE(s.size() == 3);
  CHECK(s[0].kind == SegmentKind::kVoiced);
  CHECK(s[1].kind == SegmentKind::kPause);
  CHECK(s[2].kind == SegmentKind::kVoiced);
  const double hop = 0.010;
  CHECK(std::abs(s[1].start_s - 1.0) <= hop);
  CHECK(std::abs(s[1].end_s - 2.0) <= hop);
  CHECK(s.front().start_s == 0.0);
  CHECK(s.back().end_s == doctest::Approx(a.duration()));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].start_s == s[i - 1].end_s);

  const auto p = prosody_features(c, s);
  // Pause share is 1/2 of the sounding time, vocal share 1, V/P = 2, within
  // one hop of boundary error on each side.
  CHECK(std::abs(p[29] - 0.5) <= 2 * hop / 1.0);
  CHECK(p[32] == 1.0);
  CHECK(p[31] == 0.0);
  CHECK(std::abs(p[33] - 2.0) <= 4 * hop / 0.98);
  CHECK(p[0] == doctest::Approx(150).epsilon(0.02));
}

TEST_CASE("pauses shorter than the minimum merge into the previous span") {
  auto a = sawtooth(150, 1.0);
  append(a, silence(0.05));
  append(a, sawtooth(150, 1.0));
  const auto s = segment_vup(estimate_f0(a));
  for (const auto& seg : s) CHECK(seg.kind != SegmentKind::kPause);
}

TEST_CASE("formants of a two-resonance pulse train") {
  std::vector<double> periods(250, 1.0 / 120);
  auto x = impulse_train(periods);
  x = resonate(resonate(x, 500, 60), 1500, 90);
  const auto a = make_audio(x);
  const auto c = estimate_f0(a);
  Diagnostics diag;
  const auto fm = formant_stats(a, c, {}, &diag);
  CHECK(fm.frames > 100);
  CHECK(std::abs(fm.f1_mean - 500) <= 50);
  CHECK(std::abs(fm.f2_mean - 1500) <= 150);
  CHECK(fm.f1_std < 25);
}

TEST_CASE("GCIs of a periodic pulse train") {
  std::vector<double> periods(250, 0.008);
  auto x = impulse_train(periods);
  const auto a = make_audio(resonate(x, 700, 100));
  const auto c = estimate_f0(a);
  const auto gci = detect_gci(a, c);
  CHECK(gci.size() >= 240);
  const auto s = stats::summarize(intervals(gci));
  CHECK(std::abs(s.mean - 0.008) <= 1.0 / kRate);
  CHECK(s.std / s.mean < 0.01);
  const auto ph = phonation_features(a, c, gci);
  CHECK(ph.jitter < 0.1);
}

TEST_CASE("5% jitter: GCI interval CV near 0.05") {
  const auto a = vowel_from_periods(jittered_periods(0.008, 0.05, 250, 1));
  const auto c = estimate_f0(a);
  const auto gci = detect_gci(a, c);
  std::vector<double> iv;
  for (double d : intervals(gci)) if (d < 1.0 / 60) iv.push_back(d);
  const auto s = stats::summarize(iv);
  const double cv = s.std / s.mean;
  CHECK(cv >= 0.03);
  CHECK(cv <= 0.07);
}

TEST_CASE("4% jitter reads between 3 and 5 percent") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto a = vowel_from_periods(jittered_periods(0.008, 0.04, 250, seed));
    const auto c = estimate_f0(a);
    const auto ph = phonation_features(a, c, detect_gci(a, c));
    CHECK(ph.jitter >= 3.0);
    CHECK(ph.jitter <= 5.0);
    CHECK(ph.ppq > 0.0);
    CHECK(std::isfinite(ph.shimmer));
  }
}

TEST_CASE("glottal open quotient tracks the source") {
  Diagnostics diag;
  const auto a = glottal_source(120, 0.6, 2.0, false);
  const auto c = estimate_f0(a);
  const auto gl = glottal_descriptors(a, detect_gci(a, c), {}, &diag);
  CHECK(gl.chunks >= 8);
  CHECK(std::abs(gl.values[6] - 0.6) <= 0.05);
  CHECK(gl.values[0] <= 0.01);

  const auto b = glottal_source(120, 0.4, 2.0, false);
  const auto cb = estimate_f0(b);
  const auto gb = glottal_descriptors(b, detect_gci(b, cb), {}, &diag);
  CHECK(std::abs(gb.values[6] - 0.4) <= 0.05);
  CHECK(gb.values[6] < gl.values[6]);

  const auto v = glottal_source(120, 0.6, 2.0, true);
  const auto cv = estimate_f0(v);
  const auto gv = glottal_descriptors(v, detect_gci(v, cv), {}, &diag);
  CHECK(std::abs(gv.values[6] - 0.6) <= 0.05);
}

TEST_CASE("DF0 of a steady tone is near zero; of a glide, positive") {
  const auto a = sawtooth(150, 1.0);
  const auto c = estimate_f0(a);
  const auto ph = phonation_features(a, c, detect_gci(a, c));
  CHECK(std::abs(ph.df0_mean) < 0.5);

  std::vector<double> x(kRate);
  double phase = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 120.0 + 80.0 * static_cast<double>(i) / kRate;
    phase = std::fmod(phase + f / kRate, 1.0);
    x[i] = 0.5 * (2.0 * phase - 1.0);
  }
  const auto g = make_audio(x);
  const auto cg = estimate_f0(g);
  CHECK(phonation_features(g, cg, detect_gci(g, cg)).df0_mean > 0.0);
}

TEST_CASE("extract_speech_features") {
  auto a = vowel_from_periods(jittered_periods(1.0 / 150, 0.01, 150, 4));
  append(a, silence(0.5));
  append(a, vowel_from_periods(jittered_periods(1.0 / 150, 0.01, 150, 5)));
  const auto v = extract_speech_features(a);
  for (double x : v.values) CHECK(std::isfinite(x));
  CHECK(v[25] == doctest::Approx(150).epsilon(0.03));
  const auto again = extract_speech_features(a);
  CHECK(std::equal(v.values.begin(), v.values.end(), again.values.begin()));
  CHECK(speech_feature_names()[54] == std::string_view("pvu"));
  CHECK(speech_feature_names()[18] == std::string_view("jitter"));

  // A silent recording yields a full, finite vector with diagnostics.
  Diagnostics diag;
  const auto s = extract_speech_features(silence(1.0), {}, &diag);
  for (double x : s.values) CHECK(std::isfinite(x));
  CHECK(s[25] == 0.0);
  CHECK_FALSE(diag.empty());
}
