#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qmalab/bits.hpp"
#include "qmalab/dense.hpp"
#include "qmalab/graph.hpp"
#include "qmalab/noise.hpp"
#include "qmalab/random.hpp"
#include "qmalab/stats.hpp"
#include "qmalab/tableau.hpp"

namespace qmalab {

/// What Arthur receives: a stabilizer state when Merlin's strategy is
/// Clifford-expressible, otherwise a dense vector (small systems only).
using ReceivedState = std::variant<StabilizerTableau, DenseState>;

std::size_t received_num_qubits(const ReceivedState& s);

/// One relaxed-test run: raw single-qubit outcomes, the parity syndrome and
/// the verdict. Outcome bits use 0 <-> +1, 1 <-> -1 so that a Z-error pattern
/// shows up as syndrome = pattern restriction.
struct SyndromeRecord {
  int branch = 1;  // 1 or 2
  std::vector<std::pair<std::size_t, int>> x_outcomes;  // (qubit, bit)
  std::vector<std::pair<std::size_t, int>> z_outcomes;
  BitVec syndrome;  // over V1 black (test 1) or V1 white (test 2)
  bool pass = false;

  /// One JSON object per line, for debugging traces.
  std::string to_json_line() const;
};

/// Strict stabilizer test: draw k uniformly over {0,1}^{N1}, measure
/// s_k = prod_{j in V1} (g'_j)^{k_j}, pass iff the outcome is +1.
/// Measured the way Arthur would, one qubit at a time in the local Pauli
/// basis, multiplying outcomes.
bool strict_stabilizer_test(ReceivedState& state, const ProtocolGraph& g, RandomStream& rng);

/// Same test via a single joint Pauli-product measurement (tableau only).
/// Distribution-identical to the single-qubit route; kept for cross-checking.
bool strict_stabilizer_test_joint(StabilizerTableau& state, const ProtocolGraph& g,
                                  RandomStream& rng);

/// Relaxed test 1: X on black V1 qubits, Z on white qubits of G'; syndrome
/// bit j = x_j xor (xor of z over S_j in G') for j in V1 black; pass iff the
/// syndrome is in Omega1.
SyndromeRecord relaxed_test_1(ReceivedState& state, const ProtocolGraph& g,
                              const CorrectableSet& gamma, RandomStream& rng);

/// Mirror image: X on white V1 qubits, Z on black qubits of G', Omega2.
SyndromeRecord relaxed_test_2(ReceivedState& state, const ProtocolGraph& g,
                              const CorrectableSet& gamma, RandomStream& rng);

enum class TestKind { Strict, Relaxed1, Relaxed2 };

using StateSource = std::function<ReceivedState(RandomStream&)>;

struct PassEstimate {
  uint64_t passes = 0;
  uint64_t shots = 0;
  double rate() const { return shots == 0 ? 0.0 : static_cast<double>(passes) / shots; }
  Interval wilson95() const { return ProportionEstimate{passes, shots}.wilson95(); }
  double three_sigma() const { return ProportionEstimate{passes, shots}.three_sigma(); }
};

/// Fresh state per shot (the source resamples channel noise), empirical pass
/// rate with a 95% Wilson interval. Shot i draws from rng.split(i), so the
/// result does not depend on evaluation order.
PassEstimate estimate_pass_probability(const StateSource& source, TestKind test,
                                       const ProtocolGraph& g, const CorrectableSet& gamma,
                                       uint64_t shots, RandomStream& rng);

}  // namespace qmalab
