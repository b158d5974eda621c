#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "logschro/io.hpp"
#include "logschro/lab.hpp"
#include "logschro/nehari.hpp"
#include "logschro/solver.hpp"

namespace {

using namespace logschro;

std::shared_ptr<const WeightedGraph> grid(std::size_t n) {
  GeneratorSpec spec;
  spec.topology = Topology::Grid;
  spec.n = n;
  spec.well = "v2_2..v3_3";
  return std::make_shared<const WeightedGraph>(generate_graph(spec).graph);
}

VertexField sign_changing(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.5, 2.5);
  std::vector<double> v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = (i % 2 == 0 ? 1.0 : -1.0) * mag(rng);
  return VertexField(std::move(v));
}

void BM_Laplacian(benchmark::State& state) {
  const auto g = grid(static_cast<std::size_t>(state.range(0)));
  const VertexField u = sign_changing(g->size(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(*g, u));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g->size()));
}
BENCHMARK(BM_Laplacian)->Arg(8)->Arg(32)->Arg(128);

void BM_Energy(benchmark::State& state) {
  const auto g = grid(static_cast<std::size_t>(state.range(0)));
  const auto inst = ProblemInstance::full(g, 10.0);
  const VertexField u = sign_changing(g->size(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(energy(inst, u));
}
BENCHMARK(BM_Energy)->Arg(8)->Arg(32)->Arg(128);

void BM_ProjectPair(benchmark::State& state) {
  const auto g = grid(static_cast<std::size_t>(state.range(0)));
  const auto inst = ProblemInstance::full(g, 10.0);
  const VertexField u = sign_changing(g->size(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(project_pair(inst, u));
}
BENCHMARK(BM_ProjectPair)->Arg(8)->Arg(32);

void BM_SolveNodal(benchmark::State& state) {
  const auto g = grid(static_cast<std::size_t>(state.range(0)));
  const auto inst = ProblemInstance::full(g, 10.0);
  SolveOptions opts;
  opts.starts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(solve_nodal(inst, opts).level);
}
BENCHMARK(BM_SolveNodal)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SweepP6(benchmark::State& state) {
  const auto g = std::make_shared<const WeightedGraph>(
      load_graph(std::string(LOGSCHRO_FIXTURE_DIR) + "/p6.json"));
  const std::vector<double> lambdas{1, 10, 100, 1000, 10000};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, lambdas, {}).rows.size());
}
BENCHMARK(BM_SweepP6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
