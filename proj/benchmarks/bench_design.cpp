#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "potentialforge/consensus.hpp"
#include "potentialforge/design.hpp"
#include "potentialforge/learning.hpp"
#include "potentialforge/stationary.hpp"

using namespace potentialforge;

namespace {

NetworkedGame ring(std::size_t n, std::size_t k) {
  std::vector<std::vector<PlayerId>> nb(n);
  for (PlayerId i = 0; i < n; ++i) nb[i] = {(i + 1) % n, (i + n - 1) % n};
  return NetworkedGame(Dims(std::vector<std::size_t>(n, k)), nb);
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

// Gamma_{N_1} on an n-player ring with 4 strategies each.
void BM_DrawingApply(benchmark::State& state) {
  const NetworkedGame g = ring(static_cast<std::size_t>(state.range(0)), 4);
  const std::vector<PlayerId> scope{0, 1, g.players() - 1};
  const FactorOperator op = FactorOperator::drawing(g.dims(), scope).transpose();
  const std::vector<double> v = random_vector(op.cols(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.rows()));
}
BENCHMARK(BM_DrawingApply)->DenseRange(4, 8, 2);

void BM_RingSolveMatrixFree(benchmark::State& state) {
  const NetworkedGame g = ring(static_cast<std::size_t>(state.range(0)), 4);
  const std::vector<double> phi = random_vector(g.dims().total(), 2);
  DesignOptions opts;
  opts.method = SolveMethod::kMatrixFree;
  for (auto _ : state) benchmark::DoNotOptimize(solve_player(g, 0, phi, opts));
}
BENCHMARK(BM_RingSolveMatrixFree)->DenseRange(4, 7, 1)->Unit(benchmark::kMillisecond);

void BM_DemoSolveDense(benchmark::State& state) {
  const DemoConfig demo = build_demo();
  const std::vector<double> phi = lift(demo.objective, demo.game.dims());
  DesignOptions opts;
  opts.method = SolveMethod::kDense;
  for (auto _ : state) benchmark::DoNotOptimize(solve_min_norm(demo.game, phi, opts));
}
BENCHMARK(BM_DemoSolveDense)->Unit(benchmark::kMillisecond);

void BM_DemoStationary(benchmark::State& state) {
  const DemoConfig demo = build_demo();
  const std::vector<double> phi = lift(demo.objective, demo.game.dims());
  const NetworkedGame g = designed_game(demo.game, solve_min_norm(demo.game, phi));
  for (auto _ : state) benchmark::DoNotOptimize(exact_stationary(g, 10.0, Learner::kLogit));
}
BENCHMARK(BM_DemoStationary)->Unit(benchmark::kMillisecond);

void BM_BrlRun(benchmark::State& state) {
  const DemoConfig demo = build_demo();
  const std::vector<double> phi = lift(demo.objective, demo.game.dims());
  const NetworkedGame g = designed_game(demo.game, solve_min_norm(demo.game, phi));
  RunConfig config;
  config.learner = Learner::kBinaryRestrictive;
  config.schedule = demo.schedule;
  config.restriction = demo.restriction;
  config.init = initial_profile(demo.spec);
  config.steps = demo.steps;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = ++seed;
    benchmark::DoNotOptimize(run(g, demo.objective, config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.steps));
}
BENCHMARK(BM_BrlRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
