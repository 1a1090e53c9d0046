#include "qmalab/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace qmalab {

namespace {

int measure_in(ReceivedState& state, std::size_t q, char basis, RandomStream& rng) {
  if (auto* t = std::get_if<StabilizerTableau>(&state)) return t->measure_qubit(q, basis, rng);
  return std::get<DenseState>(state).measure_qubit(q, basis, rng);
}

SyndromeRecord relaxed_test_impl(ReceivedState& state, const ProtocolGraph& g,
                                 const CorrectableSet& gamma, RandomStream& rng,
                                 int which_test) {
  const auto& x_verts = which_test == 1 ? g.v1_black() : g.v1_white();
  Color z_color = which_test == 1 ? Color::White : Color::Black;

  SyndromeRecord rec;
  rec.branch = which_test;

  // Z outcomes for every vertex of G' with the opposite color (V1 and
  // V_connect alike); X outcomes for the tested color class of G''.
  std::vector<int> z_bit(g.num_vertices(), 0);
  for (std::size_t q = 0; q < g.num_vertices(); ++q) {
    if (!g.in_subgraph(q, Subgraph::Tested) || g.color(q) != z_color) continue;
    int outcome = measure_in(state, q, 'Z', rng);
    z_bit[q] = outcome == 1 ? 0 : 1;
    rec.z_outcomes.push_back({q, z_bit[q]});
  }
  rec.syndrome = BitVec(x_verts.size());
  for (std::size_t k = 0; k < x_verts.size(); ++k) {
    std::size_t j = x_verts[k];
    int outcome = measure_in(state, j, 'X', rng);
    int xj = outcome == 1 ? 0 : 1;
    rec.x_outcomes.push_back({j, xj});
    int parity = xj;
    for (std::size_t nb : g.neighbors(j, Subgraph::Tested)) parity ^= z_bit[nb];
    rec.syndrome.set(k, parity);
  }
  rec.pass = which_test == 1 ? gamma.syndrome1_ok(rec.syndrome) : gamma.syndrome2_ok(rec.syndrome);
  return rec;
}

}  // namespace

std::size_t received_num_qubits(const ReceivedState& s) {
  if (const auto* t = std::get_if<StabilizerTableau>(&s)) return t->num_qubits();
  return std::get<DenseState>(s).num_qubits();
}

std::string SyndromeRecord::to_json_line() const {
  std::ostringstream out;
  out << "{\"branch\":" << branch << ",\"x\":[";
  for (std::size_t i = 0; i < x_outcomes.size(); ++i) {
    out << (i ? "," : "") << "[" << x_outcomes[i].first << "," << x_outcomes[i].second << "]";
  }
  out << "],\"z\":[";
  for (std::size_t i = 0; i < z_outcomes.size(); ++i) {
    out << (i ? "," : "") << "[" << z_outcomes[i].first << "," << z_outcomes[i].second << "]";
  }
  out << "],\"syndrome\":\"" << syndrome.to_string() << "\",\"pass\":"
      << (pass ? "true" : "false") << "}";
  return out.str();
}

bool strict_stabilizer_test(ReceivedState& state, const ProtocolGraph& g, RandomStream& rng) {
  std::size_t n = g.num_vertices();
  if (received_num_qubits(state) != n) {
    throw std::invalid_argument("strict_stabilizer_test: state does not cover the graph");
  }
  // Uniform k over {0,1}^{N1}; s_k as an explicit Pauli product.
  PauliString s_k(n);
  for (std::size_t j : g.v1()) {
    if (rng.next_bool()) s_k *= g.stabilizer_generator(j, Subgraph::Tested);
  }
  if (s_k.is_identity_ops()) return true;  // k = 0: outcome is +1 by construction
  // Single-qubit route: measure each support site in its local basis and
  // multiply outcomes; the string's sign folds into the verdict.
  int product = s_k.phase() == Phase::PlusOne ? 1 : -1;
  for (std::size_t q = 0; q < n; ++q) {
    char op = s_k.op_at(q);
    if (op == 'I') continue;
    product *= measure_in(state, q, op, rng);
  }
  return product == 1;
}

bool strict_stabilizer_test_joint(StabilizerTableau& state, const ProtocolGraph& g,
                                  RandomStream& rng) {
  PauliString s_k(g.num_vertices());
  for (std::size_t j : g.v1()) {
    if (rng.next_bool()) s_k *= g.stabilizer_generator(j, Subgraph::Tested);
  }
  if (s_k.is_identity_ops()) return true;
  return state.measure_pauli(s_k, rng) == 1;
}

SyndromeRecord relaxed_test_1(ReceivedState& state, const ProtocolGraph& g,
                              const CorrectableSet& gamma, RandomStream& rng) {
  return relaxed_test_impl(state, g, gamma, rng, 1);
}

SyndromeRecord relaxed_test_2(ReceivedState& state, const ProtocolGraph& g,
                              const CorrectableSet& gamma, RandomStream& rng) {
  return relaxed_test_impl(state, g, gamma, rng, 2);
}

PassEstimate estimate_pass_probability(const StateSource& source, TestKind test,
                                       const ProtocolGraph& g, const CorrectableSet& gamma,
                                       uint64_t shots, RandomStream& rng) {
  if (shots == 0) throw std::invalid_argument("estimate_pass_probability: shots must be >= 1");
  PassEstimate est;
  est.shots = shots;
  for (uint64_t i = 0; i < shots; ++i) {
    RandomStream trial = rng.split(i);
    ReceivedState state = source(trial);
    bool pass = false;
    switch (test) {
      case TestKind::Strict: pass = strict_stabilizer_test(state, g, trial); break;
      case TestKind::Relaxed1: pass = relaxed_test_1(state, g, gamma, trial).pass; break;
      case TestKind::Relaxed2: pass = relaxed_test_2(state, g, gamma, trial).pass; break;
    }
    if (pass) ++est.passes;
  }
  return est;
}

}  // namespace qmalab
