#include "qmalab/graph_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmalab {

namespace {

// The basis change diagonalizing the graph basis:
// W(|G''_(u,v)> tensor |t>) = W . CZ_E1 . H^{V1} |u, v, t>, so coefficients
// are read off after applying the inverse (all factors self-inverse).
void apply_basis_rotation(DenseState& s, const ProtocolGraph& g) {
  for (auto [a, b] : g.e_connect()) s.apply_cz(a, b);
  for (auto [a, b] : g.e1()) s.apply_cz(a, b);
  for (std::size_t q : g.v1()) s.apply_h(q);
}

void apply_basis_rotation_inverse(DenseState& s, const ProtocolGraph& g) {
  for (std::size_t q : g.v1()) s.apply_h(q);
  for (auto [a, b] : g.e1()) s.apply_cz(a, b);
  for (auto [a, b] : g.e_connect()) s.apply_cz(a, b);
}

}  // namespace

double GraphBasisDecomposition::total_mass() const {
  double acc = 0.0;
  for (const auto& c : coeffs) acc += std::norm(c);
  return acc;
}

GraphBasisDecomposition graph_basis_decompose(const DenseState& psi, const ProtocolGraph& g) {
  if (psi.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument("graph_basis_decompose: state size does not match graph");
  }
  if (psi.num_qubits() > kDenseQubitCap) {
    throw std::invalid_argument("graph_basis_decompose: state exceeds the dense cap");
  }
  DenseState rotated = psi;
  apply_basis_rotation(rotated, g);
  GraphBasisDecomposition d;
  d.n1b = g.v1_black().size();
  d.n1w = g.v1_white().size();
  d.n2 = g.v2().size();
  d.coeffs = rotated.amplitudes();
  return d;
}

DenseState reconstruct_from_decomposition(const GraphBasisDecomposition& d,
                                          const ProtocolGraph& g) {
  DenseState s = DenseState::from_amplitudes(d.num_qubits(), d.coeffs);
  apply_basis_rotation_inverse(s, g);
  return s;
}

MassSplit component_masses(const GraphBasisDecomposition& d, const CorrectableSet& gamma) {
  MassSplit m;
  uint64_t dim = uint64_t{1} << d.num_qubits();
  // Membership per u / v value, computed once per field value.
  std::vector<char> u_ok(uint64_t{1} << d.n1b), v_ok(uint64_t{1} << d.n1w);
  for (uint64_t u = 0; u < u_ok.size(); ++u) {
    BitVec bits(d.n1b);
    for (std::size_t k = 0; k < d.n1b; ++k) bits.set(k, (u >> k) & 1);
    u_ok[u] = gamma.syndrome1_ok(bits);
  }
  for (uint64_t v = 0; v < v_ok.size(); ++v) {
    BitVec bits(d.n1w);
    for (std::size_t k = 0; k < d.n1w; ++k) bits.set(k, (v >> k) & 1);
    v_ok[v] = gamma.syndrome2_ok(bits);
  }
  for (uint64_t i = 0; i < dim; ++i) {
    double mass = std::norm(d.coeffs[i]);
    bool uy = u_ok[d.u_of(i)];
    bool vy = v_ok[d.v_of(i)];
    (uy ? (vy ? m.yy : m.yn) : (vy ? m.ny : m.nn)) += mass;
  }
  return m;
}

GraphBasisDecomposition restrict_to_correctable(const GraphBasisDecomposition& d,
                                                const CorrectableSet& gamma, double* renorm) {
  std::vector<char> u_ok(uint64_t{1} << d.n1b), v_ok(uint64_t{1} << d.n1w);
  for (uint64_t u = 0; u < u_ok.size(); ++u) {
    BitVec bits(d.n1b);
    for (std::size_t k = 0; k < d.n1b; ++k) bits.set(k, (u >> k) & 1);
    u_ok[u] = gamma.syndrome1_ok(bits);
  }
  for (uint64_t v = 0; v < v_ok.size(); ++v) {
    BitVec bits(d.n1w);
    for (std::size_t k = 0; k < d.n1w; ++k) bits.set(k, (v >> k) & 1);
    v_ok[v] = gamma.syndrome2_ok(bits);
  }
  GraphBasisDecomposition restricted = d;
  double r = 0.0;
  for (uint64_t i = 0; i < restricted.coeffs.size(); ++i) {
    if (u_ok[d.u_of(i)] && v_ok[d.v_of(i)]) {
      r += std::norm(restricted.coeffs[i]);
    } else {
      restricted.coeffs[i] = 0.0;
    }
  }
  if (r < 1e-15) {
    throw std::runtime_error("restrict_to_correctable: no mass inside Omega1 x Omega2");
  }
  double scale = 1.0 / std::sqrt(r);
  for (auto& c : restricted.coeffs) c *= scale;
  if (renorm) *renorm = r;
  return restricted;
}

DenseState project_to_correctable(const GraphBasisDecomposition& d, const ProtocolGraph& g,
                                  const CorrectableSet& gamma, double* renorm) {
  GraphBasisDecomposition restricted = restrict_to_correctable(d, gamma, renorm);
  return reconstruct_from_decomposition(restricted, g);
}

double exact_test_probability(const DenseState& psi, const ProtocolGraph& g,
                              const CorrectableSet& gamma, int which_test) {
  if (which_test != 1 && which_test != 2) {
    throw std::invalid_argument("exact_test_probability: test selector must be 1 or 2");
  }
  const auto& verts = which_test == 1 ? g.v1_black() : g.v1_white();
  const auto& omega = which_test == 1 ? gamma.omega1 : gamma.omega2;
  // Deterministic iteration order for reproducible rounding.
  std::vector<BitVec> syndromes(omega.begin(), omega.end());
  std::sort(syndromes.begin(), syndromes.end(),
            [](const BitVec& a, const BitVec& b) { return a.to_string() < b.to_string(); });
  double total = 0.0;
  for (const auto& omega_bits : syndromes) {
    DenseState proj = psi;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      PauliString gj = g.stabilizer_generator(verts[k], Subgraph::Tested);
      proj.apply_pauli_projector(gj, omega_bits.get(k) ? -1 : +1);
    }
    double nrm = proj.norm();
    total += nrm * nrm;
  }
  return total;
}

double exact_strict_test_probability(const DenseState& psi, const ProtocolGraph& g) {
  DenseState proj = psi;
  for (std::size_t q : g.v1()) {
    proj.apply_pauli_projector(g.stabilizer_generator(q, Subgraph::Tested), +1);
  }
  double nrm = proj.norm();
  return 0.5 + 0.5 * nrm * nrm;
}

TraceDistanceBoundReport verify_trace_distance_bound(const DenseState& psi,
                                                     const ProtocolGraph& g,
                                                     const CorrectableSet& gamma) {
  TraceDistanceBoundReport rep;
  rep.p_test1_exact = exact_test_probability(psi, g, gamma, 1);
  rep.p_test2_exact = exact_test_probability(psi, g, gamma, 2);
  rep.epsilon = 1.0 - std::min(rep.p_test1_exact, rep.p_test2_exact);
  rep.epsilon_in_range = rep.epsilon <= 0.5 + 1e-12;

  GraphBasisDecomposition d = graph_basis_decompose(psi, g);
  rep.yy = component_masses(d, gamma).yy;
  if (rep.yy < 1e-15) {
    rep.trace_distance = 1.0;  // no correctable component at all
  } else {
    DenseState projected = project_to_correctable(d, g, gamma);
    rep.trace_distance = trace_distance(psi, projected);
  }
  double eps = std::clamp(rep.epsilon, 0.0, 1.0);
  rep.bound = std::sqrt(std::max(0.0, 4.0 * eps - 4.0 * eps * eps));
  rep.holds = rep.trace_distance <= rep.bound + 1e-9;
  return rep;
}

}  // namespace qmalab
