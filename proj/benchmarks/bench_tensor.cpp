#include <benchmark/benchmark.h>

#include "adcue/optim.hpp"
#include "adcue/rng.hpp"
#include "adcue/tensor.hpp"

using namespace adcue;

namespace {

Tensor2 randn(long r, long c, std::uint64_t seed) {
  Rng rng(seed);
  Tensor2 t(r, c);
  for (long i = 0; i < t.size(); ++i) t.data()[i] = rng.normal();
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const long n = state.range(0);
  const Tensor2 a = randn(n, 1024, 1), b = randn(1024, 1024, 2);
  for (auto _ : state) {
    Tensor2 c = matmul(a, b);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * n * 1024 * 1024 * 2);
}
BENCHMARK(BM_Matmul)->Arg(1)->Arg(16)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_SoftmaxRows(benchmark::State& state) {
  const Tensor2 x = randn(1024, state.range(0), 3);
  for (auto _ : state) {
    Tensor2 y = softmax_rows(x);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}
BENCHMARK(BM_SoftmaxRows)->Arg(35)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_LayerNorm(benchmark::State& state) {
  const Tensor2 x = randn(state.range(0), 128, 4);
  const Tensor2 g = Tensor2::Ones(1, 128), o = Tensor2::Zero(1, 128);
  for (auto _ : state) {
    LayerNormCache cache;
    Tensor2 y = layer_norm(x, g, o, &cache);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_LayerNorm)->Arg(16)->Arg(256);

// Two d x d weights, the bulk of the cross-attention parameters.
void BM_AdamWStep(benchmark::State& state) {
  ParamSet p;
  for (const char* name : {"W_q", "W_v"}) {
    auto& prm = p.add(name, randn(1024, 1024, 5));
    prm.grad = randn(1024, 1024, 6);
  }
  const AdamWConfig cfg;
  for (auto _ : state) {
    adamw_step(p, cfg);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.scalar_count()));
}
BENCHMARK(BM_AdamWStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
