#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pareto_tame/minnorm.hpp"
#include "pareto_tame/problem.hpp"
#include "pareto_tame/sections.hpp"
#include "pareto_tame/stationarity.hpp"

namespace pt = pareto_tame;

namespace {

void BM_MinNorm(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::mt19937 rng(1);
  std::normal_distribution<double> n01;
  std::vector<pt::Vec> G(m, pt::Vec(n));
  for (auto& g : G)
    for (auto& v : g) v = n01(rng) + 0.5;
  pt::ConeRep C;
  C.rays.push_back(pt::Vec::Ones(n));
  for (auto _ : state) benchmark::DoNotOptimize(pt::min_norm(G, C).distance);
}
BENCHMARK(BM_MinNorm)->Args({2, 4})->Args({3, 8})->Args({10, 32})->Args({50, 100});

void BM_FrontOracle(benchmark::State& state) {
  const pt::Problem p = pt::fixture("tradeoff_line");
  const auto w = pt::Window::uniform(p.window->lower, p.window->upper,
                                     static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pt::front_oracle(p.f, p.K, w).weak.size());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.node_count()));
}
BENCHMARK(BM_FrontOracle)->Arg(21)->Arg(41)->Arg(61);

void BM_NuSweep(benchmark::State& state) {
  const pt::Problem p = pt::fixture(state.range(0) == 0 ? "ex_5_8" : "coercive");
  const auto pts = pt::grid(p.K, pt::Window::uniform(p.window->lower, p.window->upper, 41));
  for (auto _ : state) {
    double total = 0.0;
    for (const auto& x : pts) {
      try {
        total += pt::nu(p.f, p.K, x).value;
      } catch (const pt::NumericalError&) {
      }
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}
BENCHMARK(BM_NuSweep)->Arg(0)->Arg(1);

}  // namespace
BENCHMARK_MAIN();
