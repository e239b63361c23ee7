#include <benchmark/benchmark.h>

#include <vector>

#include "adcue/models.hpp"
#include "adcue/rng.hpp"

using namespace adcue;

namespace {

std::vector<Example> batch_of(std::size_t count, long n, long d, long m) {
  Rng rng(11);
  std::vector<Example> out(count);
  for (auto& ex : out) {
    ex.frames = Tensor2(n, d);
    ex.knowledge = Tensor2(1, m);
    for (long i = 0; i < ex.frames.size(); ++i) ex.frames.data()[i] = rng.normal();
    for (long i = 0; i < m; ++i) ex.knowledge(0, i) = rng.normal();
    ex.label = rng.below(2);
  }
  return out;
}

void BM_CrossAttnForward(benchmark::State& state) {
  Rng rng(1);
  const long m = state.range(0);
  CrossAttnModel model(static_cast<std::size_t>(m), 1024, rng);
  const auto ex = batch_of(1, 8, 1024, m);
  for (auto _ : state) {
    auto out = model.forward(ex[0].frames, ex[0].knowledge);
    benchmark::DoNotOptimize(out.logits.data());
  }
}
BENCHMARK(BM_CrossAttnForward)->Arg(35)->Arg(60)->Unit(benchmark::kMillisecond);

// One training batch of 16 at production size.
void BM_CrossAttnLossAndGradients(benchmark::State& state) {
  Rng rng(2);
  const long m = state.range(0);
  CrossAttnModel model(static_cast<std::size_t>(m), 1024, rng);
  const auto data = batch_of(16, 8, 1024, m);
  std::vector<const Example*> batch;
  for (const auto& e : data) batch.push_back(&e);
  for (auto _ : state) benchmark::DoNotOptimize(model.loss_and_gradients(batch));
}
BENCHMARK(BM_CrossAttnLossAndGradients)->Arg(35)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SelfAttnLossAndGradients(benchmark::State& state) {
  Rng rng(3);
  SelfAttnModel model(1024, 128, rng);
  const auto data = batch_of(16, state.range(0), 1024, 1);
  std::vector<const Example*> batch;
  for (const auto& e : data) batch.push_back(&e);
  for (auto _ : state) benchmark::DoNotOptimize(model.loss_and_gradients(batch));
}
BENCHMARK(BM_SelfAttnLossAndGradients)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
