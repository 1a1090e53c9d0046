#include <benchmark/benchmark.h>

#include "qmalab/graph.hpp"
#include "qmalab/tableau.hpp"

using namespace qmalab;

static void BM_GraphStateBuild(benchmark::State& state) {
  std::size_t cols = static_cast<std::size_t>(state.range(0));
  ProtocolGraph g = build_graph(make_grid_spec(4, cols, cols - 1));
  for (auto _ : state) {
    StabilizerTableau t = graph_state(g);
    benchmark::DoNotOptimize(t);
  }
  state.SetComplexityN(static_cast<int64_t>(4 * cols));
}
BENCHMARK(BM_GraphStateBuild)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Complexity();

static void BM_StabilizerMeasurement(benchmark::State& state) {
  std::size_t cols = static_cast<std::size_t>(state.range(0));
  ProtocolGraph g = build_graph(make_grid_spec(4, cols, cols - 1));
  StabilizerTableau base = graph_state(g);
  RandomStream rng(1);
  uint64_t i = 0;
  for (auto _ : state) {
    StabilizerTableau t = base;
    PauliString s_k(g.num_vertices());
    RandomStream trial = rng.split(i++);
    for (std::size_t j : g.v1()) {
      if (trial.next_bool()) s_k *= g.stabilizer_generator(j, Subgraph::Tested);
    }
    if (!s_k.is_identity_ops()) benchmark::DoNotOptimize(t.measure_pauli(s_k, trial));
  }
}
BENCHMARK(BM_StabilizerMeasurement)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_RandomCliffordCircuit(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(2);
  auto gates = random_clifford_circuit(n, 20 * n, rng);
  for (auto _ : state) {
    StabilizerTableau t(n);
    apply_circuit(t, gates);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_RandomCliffordCircuit)->Arg(8)->Arg(32)->Arg(128);
