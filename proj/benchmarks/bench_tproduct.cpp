#include <benchmark/benchmark.h>

#include "tensoreq/tensoreq.hpp"

using namespace tensoreq;

namespace {

void BM_TprodFourier(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto n3 = static_cast<std::size_t>(state.range(1));
  const Tensor3 c = gaussian_tensor({n, n, n3}, 1);
  const Tensor3 d = gaussian_tensor({n, n, n3}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tprod(c, d));
}

void BM_TprodNaive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto n3 = static_cast<std::size_t>(state.range(1));
  const Tensor3 c = gaussian_tensor({n, n, n3}, 1);
  const Tensor3 d = gaussian_tensor({n, n, n3}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(tprod_naive(c, d));
}

}  // namespace

BENCHMARK(BM_TprodFourier)->Args({8, 8})->Args({32, 8})->Args({32, 32})->Args({64, 16});
BENCHMARK(BM_TprodNaive)->Args({8, 8})->Args({32, 8})->Args({32, 32})->Args({64, 16});
