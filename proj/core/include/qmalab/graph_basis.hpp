#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qmalab/dense.hpp"
#include "qmalab/graph.hpp"
#include "qmalab/noise.hpp"

namespace qmalab {

/// Coefficients of a state in the orthonormal basis
/// { W(|G''_(u,v)> tensor |t>) } with u over V1 black, v over V1 white and t
/// the computational basis on V2. Thanks to the canonical qubit order the
/// coefficient index splits into contiguous bit fields [u | v | t].
struct GraphBasisDecomposition {
  std::size_t n1b = 0, n1w = 0, n2 = 0;
  std::vector<std::complex<double>> coeffs;

  std::size_t num_qubits() const { return n1b + n1w + n2; }
  uint64_t u_of(uint64_t index) const { return index & ((uint64_t{1} << n1b) - 1); }
  uint64_t v_of(uint64_t index) const {
    return (index >> n1b) & ((uint64_t{1} << n1w) - 1);
  }
  double total_mass() const;
};

GraphBasisDecomposition graph_basis_decompose(const DenseState& psi, const ProtocolGraph& g);

/// Inverse of graph_basis_decompose.
DenseState reconstruct_from_decomposition(const GraphBasisDecomposition& d,
                                          const ProtocolGraph& g);

/// Squared-coefficient mass split by whether u lands in Omega1 and v in
/// Omega2. YY + YN + NY + NN = 1 for a normalized state.
struct MassSplit {
  double yy = 0.0, yn = 0.0, ny = 0.0, nn = 0.0;
};

MassSplit component_masses(const GraphBasisDecomposition& d, const CorrectableSet& gamma);

/// Coefficient table of |Psi'>: entries outside Omega1 x Omega2 zeroed and
/// the rest renormalized by sqrt(R), R = YY. Throws when R is numerically
/// zero.
GraphBasisDecomposition restrict_to_correctable(const GraphBasisDecomposition& d,
                                                const CorrectableSet& gamma,
                                                double* renorm = nullptr);

/// |Psi'> itself (the restricted table mapped back to a state vector).
DenseState project_to_correctable(const GraphBasisDecomposition& d, const ProtocolGraph& g,
                                  const CorrectableSet& gamma, double* renorm = nullptr);

/// Exact relaxed-test pass probability via projector sums
/// sum_{omega in Omega} <Psi| prod_j (I + (-1)^{omega_j} g'_j)/2 |Psi>.
double exact_test_probability(const DenseState& psi, const ProtocolGraph& g,
                              const CorrectableSet& gamma, int which_test);

/// Exact strict-test pass probability (1 + <prod_{j in V1} (I+g'_j)/2>)/2.
double exact_strict_test_probability(const DenseState& psi, const ProtocolGraph& g);

struct TraceDistanceBoundReport {
  double p_test1_exact = 0.0;
  double p_test2_exact = 0.0;
  double yy = 0.0;
  double epsilon = 0.0;         // 1 - min(p_test1, p_test2)
  double trace_distance = 0.0;  // to the projected state
  double bound = 0.0;           // sqrt(4 eps - 4 eps^2)
  bool epsilon_in_range = true; // epsilon <= 1/2
  bool holds = false;
};

/// Checks trace_distance(|Psi>, |Psi'>) <= sqrt(4 eps - 4 eps^2) with
/// eps = 1 - min(p_test1, p_test2), both test probabilities computed by
/// projector sums (independent of the decomposition route).
TraceDistanceBoundReport verify_trace_distance_bound(const DenseState& psi,
                                                     const ProtocolGraph& g,
                                                     const CorrectableSet& gamma);

}  // namespace qmalab
