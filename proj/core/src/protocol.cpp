#include "qmalab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qmalab {

namespace {

void apply_pauli_error(ReceivedState& state, const PauliString& err) {
  if (auto* t = std::get_if<StabilizerTableau>(&state)) {
    for (std::size_t q = 0; q < err.num_qubits(); ++q) {
      if (err.x_bit(q)) t->apply_x(q);
      if (err.z_bit(q)) t->apply_z(q);
    }
  } else {
    std::get<DenseState>(state).apply_pauli(err);
  }
}

DenseState to_dense(ReceivedState&& state) {
  if (auto* t = std::get_if<StabilizerTableau>(&state)) return dense_from_tableau(*t);
  return std::move(std::get<DenseState>(state));
}

}  // namespace

BitVec ProtocolFixture::frame_for_pattern(const BitVec& qubit_frame) const {
  BitVec out(pattern.num_vertices);
  for (std::size_t v = 0; v < pattern.num_vertices; ++v) {
    out.set(v, qubit_frame.get(qubit_of_vertex[v]));
  }
  return out;
}

ProtocolFixture make_computation_fixture(std::size_t wires,
                                         const std::vector<LogicalGate>& gates) {
  ProtocolFixture fx;
  fx.wires = wires;
  fx.circuit = gates;
  fx.pattern = compile_small_circuit(wires, gates);

  const auto& p = fx.pattern;
  std::vector<bool> is_boundary(p.num_vertices, false);
  for (std::size_t v : p.inputs) is_boundary[v] = true;
  for (std::size_t v : p.outputs) is_boundary[v] = true;

  // BFS 2-coloring of the cluster. Wires are paths; a CZ bridge pair with
  // uneven wire spacing can close an odd cycle, in which case the circuit
  // cannot serve as a protocol fixture and is rejected here.
  std::vector<int> side(p.num_vertices, -1);
  std::vector<std::vector<std::size_t>> adj(p.num_vertices);
  for (auto [a, b] : p.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (std::size_t root = 0; root < p.num_vertices; ++root) {
    if (side[root] != -1) continue;
    side[root] = 0;
    std::vector<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t v = queue.back();
      queue.pop_back();
      for (std::size_t w : adj[v]) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          throw std::invalid_argument("make_computation_fixture: cluster is not bipartite");
        }
      }
    }
  }

  GraphSpec spec;
  for (std::size_t v = 0; v < p.num_vertices; ++v) {
    GraphSpec::Vertex gv;
    gv.id = v;
    gv.color = side[v] == 0 ? Color::Black : Color::White;
    gv.region = is_boundary[v] ? Region::Witness : Region::Tested;
    spec.vertices.push_back(gv);
  }
  spec.edges = p.edges;
  fx.graph = build_graph(spec);

  fx.qubit_of_vertex.resize(p.num_vertices);
  fx.vertex_of_qubit.resize(p.num_vertices);
  for (std::size_t v = 0; v < p.num_vertices; ++v) {
    fx.qubit_of_vertex[v] = fx.graph.qubit_of(v);
    fx.vertex_of_qubit[fx.graph.qubit_of(v)] = v;
  }
  return fx;
}

MerlinStrategy MerlinStrategy::honest(Witness w) {
  MerlinStrategy s;
  s.kind = Kind::Honest;
  s.witness = w;
  return s;
}

MerlinStrategy MerlinStrategy::deviated(BitVec gamma_v1) {
  MerlinStrategy s;
  s.kind = Kind::DeviatedGamma;
  s.gamma = std::move(gamma_v1);
  return s;
}

MerlinStrategy MerlinStrategy::graph_basis(BitVec u, BitVec v, uint64_t t) {
  MerlinStrategy s;
  s.kind = Kind::GraphBasis;
  s.basis_u = std::move(u);
  s.basis_v = std::move(v);
  s.basis_t = t;
  return s;
}

MerlinStrategy MerlinStrategy::random_stabilizer(std::size_t gate_count) {
  MerlinStrategy s;
  s.kind = Kind::RandomStabilizer;
  s.random_gate_count = gate_count;
  return s;
}

MerlinStrategy MerlinStrategy::custom_dense(DenseState state) {
  MerlinStrategy s;
  s.kind = Kind::CustomDense;
  s.custom_state = std::move(state);
  return s;
}

ReceivedState merlin_state(const MerlinStrategy& strategy, const ProtocolGraph& g,
                           const ProtocolFixture* fixture, RandomStream& rng) {
  std::size_t n = g.num_vertices();
  switch (strategy.kind) {
    case MerlinStrategy::Kind::Honest:
      switch (strategy.witness) {
        case MerlinStrategy::Witness::InducedSubgraph:
          return graph_state(g, Subgraph::Full);
        case MerlinStrategy::Witness::PlusProduct:
          return graph_state(g, Subgraph::Tested);
        case MerlinStrategy::Witness::ComputationInput: {
          if (!fixture) {
            throw std::invalid_argument("merlin_state: computation witness needs a fixture");
          }
          if (strategy.computation_input.num_qubits() == 0) {
            // |0...0> input: inputs stay |0>, everything else |+>, CZ edges.
            StabilizerTableau t(n);
            std::vector<bool> is_input(n, false);
            for (std::size_t v : fixture->pattern.inputs) {
              is_input[fixture->qubit_of_vertex[v]] = true;
            }
            for (std::size_t q = 0; q < n; ++q) {
              if (!is_input[q]) t.apply_h(q);
            }
            for (auto [a, b] : g.edges()) t.apply_cz(a, b);
            return t;
          }
          DenseState resource =
              build_resource_state(fixture->pattern, strategy.computation_input);
          return resource.permute_qubits(fixture->vertex_of_qubit);
        }
        case MerlinStrategy::Witness::Dense: {
          if (strategy.dense_witness.num_qubits() != g.v2().size()) {
            throw std::invalid_argument("merlin_state: dense witness must cover V2");
          }
          // V1 block carries |G''>, witness on V2 (canonical order makes V2
          // the high qubits), then the connecting CZ layer.
          StabilizerTableau inner(g.v1().size());
          for (std::size_t q = 0; q < g.v1().size(); ++q) inner.apply_h(q);
          for (auto [a, b] : g.e1()) inner.apply_cz(a, b);
          DenseState state = dense_from_tableau(inner).tensor(strategy.dense_witness);
          apply_entangling_layer(state, entangling_layer(g));
          return state;
        }
      }
      break;
    case MerlinStrategy::Kind::DeviatedGamma: {
      if (strategy.gamma.size() != g.v1().size()) {
        throw std::invalid_argument("merlin_state: gamma must have length |V1|");
      }
      BitVec u(n);
      for (std::size_t k = 0; k < g.v1().size(); ++k) {
        if (strategy.gamma.get(k)) u.set(g.v1()[k], true);
      }
      return gu_state(g, u);  // Z^gamma slides through W onto |G''>
    }
    case MerlinStrategy::Kind::GraphBasis: {
      const auto& v1b = g.v1_black();
      const auto& v1w = g.v1_white();
      if (strategy.basis_u.size() != v1b.size() || strategy.basis_v.size() != v1w.size()) {
        throw std::invalid_argument("merlin_state: basis labels must match V1 color classes");
      }
      StabilizerTableau t(n);
      for (std::size_t q : g.v1()) t.apply_h(q);
      for (auto [a, b] : g.e1()) t.apply_cz(a, b);
      for (std::size_t k = 0; k < v1b.size(); ++k) {
        if (strategy.basis_u.get(k)) t.apply_z(v1b[k]);
      }
      for (std::size_t k = 0; k < v1w.size(); ++k) {
        if (strategy.basis_v.get(k)) t.apply_z(v1w[k]);
      }
      for (std::size_t k = 0; k < g.v2().size(); ++k) {
        if ((strategy.basis_t >> k) & 1) t.apply_x(g.v2()[k]);
      }
      apply_entangling_layer(t, entangling_layer(g));
      return t;
    }
    case MerlinStrategy::Kind::RandomStabilizer: {
      std::size_t count = strategy.random_gate_count ? strategy.random_gate_count : 4 * n;
      StabilizerTableau t(n);
      for (const auto& gate : random_clifford_circuit(n, count, rng)) t.apply(gate);
      return t;
    }
    case MerlinStrategy::Kind::CustomDense:
      if (strategy.custom_state.num_qubits() != n) {
        throw std::invalid_argument("merlin_state: custom state must cover the whole graph");
      }
      return strategy.custom_state;
  }
  throw std::logic_error("merlin_state: unreachable");
}

RoundOutcome arthur_round(ReceivedState state, const ProtocolGraph& g,
                          const CorrectableSet& gamma, const ProtocolParams& params,
                          const ProtocolFixture* fixture, bool strict_mode,
                          const std::optional<BitVec>& frame, RandomStream& rng) {
  RoundOutcome out;
  double draw = rng.next_double();
  if (draw < params.q) {
    out.branch = Branch::Computation;
    if (!fixture) {
      throw std::invalid_argument("arthur_round: computation branch drawn but no pattern bound "
                                  "(set q = 0 for test-only graphs)");
    }
    DenseState resource = to_dense(std::move(state));
    // Graph qubit order -> pattern vertex order.
    resource = resource.permute_qubits(fixture->qubit_of_vertex);
    std::optional<PauliFrame> pattern_frame;
    if (frame) pattern_frame = fixture->frame_for_pattern(*frame);
    PatternRun run = run_pattern(std::move(resource), fixture->pattern, rng, pattern_frame);
    int bit = run.output_state.measure_qubit_z(0, rng);
    out.accept = bit == 1;
    return out;
  }
  bool first_test = draw < params.q + (1.0 - params.q) / 2.0;
  out.branch = first_test ? Branch::Test1 : Branch::Test2;
  if (strict_mode) {
    out.accept = strict_stabilizer_test(state, g, rng);
  } else {
    out.record = first_test ? relaxed_test_1(state, g, gamma, rng)
                            : relaxed_test_2(state, g, gamma, rng);
    out.accept = out.record->pass;
  }
  return out;
}

namespace {

struct Counts {
  uint64_t acc_pass = 0, shots = 0;
  uint64_t comp_pass = 0, comp_shots = 0;
  uint64_t t1_pass = 0, t1_shots = 0;
  uint64_t t2_pass = 0, t2_shots = 0;

  void add(const RoundOutcome& out) {
    ++shots;
    if (out.accept) ++acc_pass;
    switch (out.branch) {
      case Branch::Computation:
        ++comp_shots;
        comp_pass += out.accept;
        break;
      case Branch::Test1:
        ++t1_shots;
        t1_pass += out.accept;
        break;
      case Branch::Test2:
        ++t2_shots;
        t2_pass += out.accept;
        break;
    }
  }

  void merge(const Counts& o) {
    acc_pass += o.acc_pass;
    shots += o.shots;
    comp_pass += o.comp_pass;
    comp_shots += o.comp_shots;
    t1_pass += o.t1_pass;
    t1_shots += o.t1_shots;
    t2_pass += o.t2_pass;
    t2_shots += o.t2_shots;
  }
};

RoundOutcome run_protocol_shot(const MerlinStrategy& strategy, const NoiseChannel& channel,
                               const ProtocolGraph& g, const CorrectableSet& gamma,
                               const ProtocolParams& params, const ProtocolFixture* fixture,
                               bool strict_mode, RandomStream& trial,
                               const BitVec* extra_error) {
  ReceivedState state = merlin_state(strategy, g, fixture, trial);
  PauliString err = channel.sample(trial);
  BitVec u = pauli_to_z_pattern(g, err);
  if (extra_error) {
    for (std::size_t q = 0; q < u.size(); ++q) {
      if (extra_error->get(q)) {
        PauliString zq = PauliString::single(g.num_vertices(), q, 'Z');
        apply_pauli_error(state, zq);
      }
    }
    u ^= *extra_error;
  }
  apply_pauli_error(state, err);
  std::optional<BitVec> frame;
  if (strategy.kind == MerlinStrategy::Kind::Honest && gamma.contains(u)) {
    frame = u;  // perfect decoder on Gamma only
  }
  return arthur_round(std::move(state), g, gamma, params, fixture, strict_mode, frame, trial);
}

}  // namespace

AcceptanceReport estimate_acceptance(const MerlinStrategy& strategy, const NoiseChannel& channel,
                                     const ProtocolGraph& g, const CorrectableSet& gamma,
                                     const ProtocolParams& params, const ProtocolFixture* fixture,
                                     bool strict_mode, uint64_t shots, uint64_t seed,
                                     unsigned workers, const SyndromeTraceSink& trace) {
  if (shots == 0) throw std::invalid_argument("estimate_acceptance: shots must be >= 1");
  if (workers == 0 || trace) workers = 1;  // traces are emitted in shot order
  RandomStream root(seed);

  auto run_range = [&](uint64_t begin, uint64_t end, Counts& counts) {
    for (uint64_t i = begin; i < end; ++i) {
      RandomStream trial = root.split(i);
      RoundOutcome out = run_protocol_shot(strategy, channel, g, gamma, params, fixture,
                                           strict_mode, trial, nullptr);
      if (trace && out.record) trace(i, *out.record);
      counts.add(out);
    }
  };

  Counts total;
  if (workers == 1) {
    run_range(0, shots, total);
  } else {
    std::vector<Counts> parts(workers);
    std::vector<std::thread> threads;
    uint64_t chunk = (shots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      uint64_t begin = w * chunk;
      uint64_t end = std::min(shots, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(run_range, begin, end, std::ref(parts[w]));
    }
    for (auto& t : threads) t.join();
    for (const auto& part : parts) total.merge(part);
  }

  AcceptanceReport rep;
  rep.acc = {total.acc_pass, total.shots};
  rep.comp = {total.comp_pass, total.comp_shots};
  rep.test1 = {total.t1_pass, total.t1_shots};
  rep.test2 = {total.t2_pass, total.t2_shots};
  return rep;
}

AmplifyReport amplify(const MerlinStrategy& strategy, const NoiseChannel& channel,
                      const ProtocolGraph& g, const CorrectableSet& gamma,
                      const ProtocolParams& params, const ProtocolFixture* fixture,
                      uint64_t experiments, bool correlated_noise, uint64_t seed) {
  if (experiments == 0) throw std::invalid_argument("amplify: experiments must be >= 1");
  ProtocolParams checked = params;
  checked.validate();
  unsigned r = static_cast<unsigned>(params.r);

  RandomStream root(seed);
  AmplifyReport rep;
  rep.experiments = experiments;
  uint64_t run_pass = 0, run_total = 0;
  for (uint64_t e = 0; e < experiments; ++e) {
    RandomStream stream = root.split(e);
    BitVec shared(g.num_vertices());
    if (correlated_noise && gamma.weight_bound > 0) {
      // One shared correctable error event per experiment: a random vertex
      // hit by Z in every instance.
      shared.set(stream.next_below(g.num_vertices()), true);
    }
    unsigned accepts = 0;
    for (unsigned j = 0; j < r; ++j) {
      RandomStream trial = stream.split(j + 1);
      RoundOutcome out = run_protocol_shot(strategy, channel, g, gamma, params, fixture,
                                           /*strict_mode=*/false, trial,
                                           correlated_noise ? &shared : nullptr);
      accepts += out.accept;
      run_pass += out.accept;
      ++run_total;
    }
    if (accepts <= r / 2) ++rep.rejected;
  }
  rep.per_run = {run_pass, run_total};
  double p_run = rep.per_run.rate();
  rep.chernoff_reference =
      p_run > 0.5 ? std::exp(-2.0 * r * (p_run - 0.5) * (p_run - 0.5)) : 1.0;
  rep.binomial_reference = majority_reject_prob(r, 1.0 - p_run);
  return rep;
}

CodeDemoReport code_correction_demo(const StabilizerCode& code, const NoiseChannel& channel,
                                    const DenseState& witness, uint64_t shots, uint64_t seed) {
  if (channel.num_qubits() != code.n) {
    throw std::invalid_argument("code_correction_demo: channel size does not match code");
  }
  CodeDemoReport rep;
  rep.code_name = code.name;
  rep.shots = shots;
  DenseState encoded = code.encode(witness);

  rep.weight1_all_corrected = true;
  for (const auto& err : code.correctable_errors) {
    DenseState state = encoded;
    state.apply_pauli(err);
    state.apply_pauli(code.correction_for(code.syndrome_of(state)));
    if (fidelity(state, encoded) < 1.0 - 1e-12) rep.weight1_all_corrected = false;
  }

  RandomStream root(seed);
  double fidelity_sum = 0.0;
  std::vector<std::complex<double>> rho_mean(encoded.dim() * encoded.dim(), 0.0);
  uint64_t accepts = 0;
  for (uint64_t i = 0; i < shots; ++i) {
    RandomStream trial = root.split(i);
    DenseState state = encoded;
    state.apply_pauli(channel.sample(trial));
    state.apply_pauli(code.correction_for(code.syndrome_of(state)));
    double f = fidelity(state, encoded);
    fidelity_sum += f;
    if (trial.next_double() < f) ++accepts;  // projective {|psi_L><psi_L|, rest}
    accumulate_outer_product(rho_mean, state, 1.0 / static_cast<double>(shots));
  }
  rep.mean_fidelity = fidelity_sum / static_cast<double>(shots);
  rep.acceptance = {accepts, shots};

  std::vector<std::complex<double>> target(encoded.dim() * encoded.dim(), 0.0);
  accumulate_outer_product(target, encoded, 1.0);
  rep.trace_distance_mean = trace_distance_mixed(rho_mean, target, encoded.dim());

  // Exact weight >= 2 mass for iid channels: 1 - (1-p)^n - n p (1-p)^{n-1}.
  double p_site = channel.site_error_rate();
  double nq = static_cast<double>(code.n);
  rep.weight2_mass = 1.0 - std::pow(1.0 - p_site, nq) -
                     nq * p_site * std::pow(1.0 - p_site, nq - 1.0);
  return rep;
}

}  // namespace qmalab
