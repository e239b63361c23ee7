#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "adcue/assets.hpp"
#include "adcue/corpus.hpp"
#include "adcue/lexicon.hpp"
#include "adcue/pos_tagger.hpp"
#include "adcue/rng.hpp"
#include "adcue/speech_features.hpp"
#include "adcue/text_features.hpp"
#include "adcue/wer.hpp"

using namespace adcue;

namespace {

std::vector<std::string> random_words(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(rng.below(vocab)));
  return out;
}

void BM_Mtld(benchmark::State& state) {
  const auto toks = random_words(static_cast<std::size_t>(state.range(0)), 150, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mtld(toks));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mtld)->Arg(200)->Arg(2000);

void BM_TextFeatures(benchmark::State& state) {
  std::string chat;
  const char* lines[] = {"the boy is taking a cookie from the jar .", "&-uh the the stool is tipping over .",
                         "mother is drying dishes and the water is overflowing ."};
  for (int i = 0; i < 30; ++i) chat += std::string("*PAR: ") + lines[i % 3] + "\n";
  const auto seq = normalize_tokens(parse_chat(chat), "PAR");
  const RuleTagger tagger;
  const auto lex = load_mrc(asset_dir() / "mrc_sample.dct");
  for (auto _ : state) {
    auto v = extract_text_features(seq, tagger, lex);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_TextFeatures)->Unit(benchmark::kMicrosecond);

void BM_Wer(benchmark::State& state) {
  const auto ref = random_words(static_cast<std::size_t>(state.range(0)), 50, 2);
  const auto hyp = random_words(static_cast<std::size_t>(state.range(0)), 50, 3);
  for (auto _ : state) benchmark::DoNotOptimize(wer(ref, hyp).wer);
}
BENCHMARK(BM_Wer)->Arg(12)->Arg(200);

// Seconds of a 150 Hz sawtooth with a pause in the middle.
AudioBuffer speechlike(double seconds) {
  AudioBuffer a;
  a.sample_rate = 16000;
  a.samples.resize(static_cast<std::size_t>(seconds * a.sample_rate));
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double t = static_cast<double>(i) / a.sample_rate;
    const bool pause = std::fmod(t, 2.0) > 1.5;
    a.samples[i] = pause ? 0.0 : 0.5 * (2.0 * std::fmod(150.0 * t, 1.0) - 1.0);
  }
  return a;
}

void BM_EstimateF0(benchmark::State& state) {
  const auto a = speechlike(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto c = estimate_f0(a);
    benchmark::DoNotOptimize(c.f0.data());
  }
}
BENCHMARK(BM_EstimateF0)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SpeechFeatures(benchmark::State& state) {
  const auto a = speechlike(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto v = extract_speech_features(a);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_SpeechFeatures)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
