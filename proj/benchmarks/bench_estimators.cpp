#include <benchmark/benchmark.h>

#include "bernstein/basis.hpp"
#include "bernstein/estimators.hpp"
#include "bernstein/quadrature.hpp"
#include "bernstein/simulate.hpp"
#include "bernstein/zoo.hpp"

namespace {

using namespace bernstein;

void BM_basis_row(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double x = 0.371;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bernstein_row(m, x));
  }
}
BENCHMARK(BM_basis_row)->Arg(16)->Arg(64)->Arg(256);

void BM_recursive_update(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const auto obs = zoo_density(ZooId::a).sample(1 << 14, 9);
  RecursiveEstimator est = RecursiveEstimator::on_quadrature_grid(
      StepsizeSchedule(1.0, 1.0), OrderSchedule(9.5, 2.0 / 9.0), grid);
  std::size_t i = 0;
  for (auto _ : state) {
    est.update(obs[i++ & ((1 << 14) - 1)]);
    benchmark::DoNotOptimize(est.values().front());
  }
}
BENCHMARK(BM_recursive_update)->Arg(64)->Arg(512);

void BM_batch_refit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Sample s;
  s.values = zoo_density(ZooId::a).sample(n, 10);
  const auto& rule = gauss_legendre(512);
  for (auto _ : state) {
    const auto est = BatchEstimator::vitale(s, 24);
    double acc = 0.0;
    for (double x : rule.nodes) acc += est(x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_batch_refit)->Arg(100)->Arg(500)->Arg(2000);

void BM_ise(benchmark::State& state) {
  Sample s;
  s.values = zoo_density(ZooId::a).sample(500, 11);
  const auto est = BatchEstimator::vitale(s, 72);
  const ZooDensity& truth = zoo_density(ZooId::a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ise([&est](double x) { return est(x); }, truth));
  }
}
BENCHMARK(BM_ise);

} // namespace

BENCHMARK_MAIN();
