#include <benchmark/benchmark.h>

#include "qmalab/graph_basis.hpp"
#include "qmalab/protocol.hpp"

using namespace qmalab;

static void BM_RelaxedTestShot(benchmark::State& state) {
  ProtocolGraph g = build_graph(make_grid_spec(4, static_cast<std::size_t>(state.range(0)),
                                               static_cast<std::size_t>(state.range(0)) - 1));
  CorrectableSet gamma = build_correctable_set(g, 1);
  NoiseChannel ch = NoiseChannel::z_only(g.num_vertices(), 0.01);
  RandomStream rng(3);
  uint64_t i = 0;
  for (auto _ : state) {
    RandomStream trial = rng.split(i++);
    StabilizerTableau t = graph_state(g);
    PauliString err = ch.sample(trial);
    for (std::size_t q = 0; q < g.num_vertices(); ++q) {
      if (err.z_bit(q)) t.apply_z(q);
    }
    ReceivedState s = std::move(t);
    benchmark::DoNotOptimize(relaxed_test_1(s, g, gamma, trial).pass);
  }
}
BENCHMARK(BM_RelaxedTestShot)->Arg(3)->Arg(6)->Arg(12);

static void BM_ProtocolRound(benchmark::State& state) {
  ProtocolFixture fx = make_computation_fixture(
      1, {LogicalGate::h(0), LogicalGate::z(0), LogicalGate::h(0)});
  CorrectableSet gamma = build_correctable_set(fx.graph, 1);
  ProtocolParams params;
  params.q = 0.5;
  NoiseChannel ch = NoiseChannel::z_only(fx.graph.num_vertices(), 0.01);
  MerlinStrategy honest = MerlinStrategy::honest(MerlinStrategy::Witness::ComputationInput);
  uint64_t i = 0;
  for (auto _ : state) {
    AcceptanceReport rep =
        estimate_acceptance(honest, ch, fx.graph, gamma, params, &fx, false, 1, 1000 + i++);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_ProtocolRound);

static void BM_GraphBasisDecomposition(benchmark::State& state) {
  ProtocolGraph g = build_graph(make_grid_spec(2, static_cast<std::size_t>(state.range(0)),
                                               static_cast<std::size_t>(state.range(0)) - 1));
  RandomStream rng(4);
  DenseState psi = DenseState::random_state(g.num_vertices(), rng);
  for (auto _ : state) {
    GraphBasisDecomposition d = graph_basis_decompose(psi, g);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_GraphBasisDecomposition)->Arg(3)->Arg(5)->Arg(7);
