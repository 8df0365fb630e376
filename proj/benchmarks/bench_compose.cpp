#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "wirecomp/hierarchy.hpp"

using namespace wirecomp;

namespace {

void BM_MatMul(benchmark::State& state) {
  fixtures::Rng rng(1);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix a = fixtures::rand_matrix(rng, n, n);
  const Matrix b = fixtures::rand_matrix(rng, n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_mul(a, b));
  }
}
BENCHMARK(BM_MatMul)->Arg(8)->Arg(32)->Arg(128);

void BM_ComposeDiagrams(benchmark::State& state) {
  fixtures::Rng rng(2);
  const Box x = fixtures::rand_box(rng, "X", 3, 4);
  const Box y = fixtures::rand_box(rng, "Y", 3, 4);
  const Box z = fixtures::rand_box(rng, "Z", 3, 4);
  const WiringDiagram g = fixtures::rand_diagram(rng, {x}, y);
  const WiringDiagram f = fixtures::rand_diagram(rng, {y}, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_diagrams(g, f));
  }
}
BENCHMARK(BM_ComposeDiagrams);

void BM_ApplyDiagramUav(benchmark::State& state) {
  const auto fx = fixtures::make_uav();
  const LinSystem stacked = laxator({fx.lsys, fx.csys, fx.dsys});
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_diagram(fx.f, stacked));
  }
}
BENCHMARK(BM_ApplyDiagramUav);

void BM_SimulateUav(benchmark::State& state) {
  const auto fx = fixtures::make_uav();
  const LinSystem composite =
      apply_diagram(fx.f, laxator({fx.lsys, fx.csys, fx.dsys}));
  const std::vector<double> s0(5, 0.0);
  const std::vector<std::vector<double>> inputs(
      static_cast<std::size_t>(state.range(0)), {0.1, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(composite, s0, inputs));
  }
}
BENCHMARK(BM_SimulateUav)->Arg(100)->Arg(1000);

void BM_CoupledSimulateUav(benchmark::State& state) {
  const auto fx = fixtures::make_uav();
  const std::vector<LinSystem> systems{fx.lsys, fx.csys, fx.dsys};
  const std::vector<std::vector<double>> s0{{0}, {0}, {0, 0, 0}};
  const std::vector<std::vector<double>> inputs(
      static_cast<std::size_t>(state.range(0)), {0.1, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled_simulate(fx.f, systems, s0, inputs));
  }
}
BENCHMARK(BM_CoupledSimulateUav)->Arg(100)->Arg(1000);

void BM_FlattenUavTree(benchmark::State& state) {
  const auto fx = fixtures::make_uav();
  const auto impl = fixtures::make_uav_implementation(fx);
  for (auto _ : state) {
    benchmark::DoNotOptimize(flatten(impl.tree));
  }
}
BENCHMARK(BM_FlattenUavTree);

}  // namespace

BENCHMARK_MAIN();
