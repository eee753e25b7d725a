#include <benchmark/benchmark.h>

#include "tensoreq/tensoreq.hpp"

using namespace tensoreq;

namespace {

SolverConfig relative(double tol) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.relative_tol = true;
  return cfg;
}

void BM_SolveSpd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor3 c = make_spd(gaussian_tensor({n, n, 4}, 3));
  const Tensor3 d = gaussian_tensor({n, 2, 4}, 4);
  const SolverConfig cfg = relative(1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(c, d, cfg));
}

void BM_SolveConsistent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor3 c = gaussian_tensor({n, n + 4, 4}, 5);
  const Tensor3 d = tprod(c, gaussian_tensor({n + 4, 2, 4}, 6));
  const SolverConfig cfg = relative(1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_consistent(c, d, cfg));
}

void BM_SolveLsq(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor3 c = gaussian_tensor({n + 4, n, 4}, 7);
  const Tensor3 d = gaussian_tensor({n + 4, 2, 4}, 8);
  const SolverConfig cfg = relative(1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lsq(c, d, cfg));
}

void BM_ImageRecovery(benchmark::State& state) {
  const Tensor3 c = gaussian_tensor({32, 32, 3}, 7);
  const Tensor3 img = gaussian_tensor({32, 32, 3}, 9);
  const Tensor3 deg = degrade(c, img);
  const SolverConfig cfg = relative(1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lsq(c, deg, cfg));
}

}  // namespace

BENCHMARK(BM_SolveSpd)->Arg(8)->Arg(32);
BENCHMARK(BM_SolveConsistent)->Arg(8)->Arg(32);
BENCHMARK(BM_SolveLsq)->Arg(8)->Arg(32);
BENCHMARK(BM_ImageRecovery)->Unit(benchmark::kMillisecond);
