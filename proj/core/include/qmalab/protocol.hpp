#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmalab/codes.hpp"
#include "qmalab/dense.hpp"
#include "qmalab/gap.hpp"
#include "qmalab/graph.hpp"
#include "qmalab/mbqc.hpp"
#include "qmalab/noise.hpp"
#include "qmalab/verify.hpp"

namespace qmalab {

/// A compiled computation bound to a protocol graph: the cluster's input and
/// output vertices form V2, the measured interior is V1, and the vertex <->
/// qubit maps translate between pattern order and the graph's canonical qubit
/// order.
struct ProtocolFixture {
  ProtocolGraph graph;
  MeasurementPattern pattern;
  std::vector<LogicalGate> circuit;
  std::size_t wires = 0;
  std::vector<std::size_t> qubit_of_vertex;
  std::vector<std::size_t> vertex_of_qubit;

  BitVec frame_for_pattern(const BitVec& qubit_frame) const;
};

/// Compiles the circuit and wraps the cluster as a protocol graph (BFS
/// coloring; throws if the cluster is not bipartite, which the supported gate
/// set never produces).
ProtocolFixture make_computation_fixture(std::size_t wires,
                                         const std::vector<LogicalGate>& gates);

struct MerlinStrategy {
  enum class Kind { Honest, DeviatedGamma, GraphBasis, RandomStabilizer, CustomDense };
  /// What honest Merlin places on V2.
  enum class Witness { InducedSubgraph, PlusProduct, ComputationInput, Dense };

  Kind kind = Kind::Honest;
  Witness witness = Witness::InducedSubgraph;
  DenseState dense_witness;         // Witness::Dense (|V2| qubits)
  DenseState computation_input;    // Witness::ComputationInput (wire count qubits); empty = |0...0>
  BitVec gamma;                    // DeviatedGamma: over V1, canonical order
  BitVec basis_u, basis_v;         // GraphBasis
  uint64_t basis_t = 0;
  DenseState custom_state;         // CustomDense: all N qubits
  std::size_t random_gate_count = 0;  // RandomStabilizer; 0 = 4N

  static MerlinStrategy honest(Witness w = Witness::InducedSubgraph);
  static MerlinStrategy deviated(BitVec gamma_v1);
  static MerlinStrategy graph_basis(BitVec u, BitVec v, uint64_t t);
  static MerlinStrategy random_stabilizer(std::size_t gate_count = 0);
  static MerlinStrategy custom_dense(DenseState state);
};

/// Produces the state Merlin sends for one round. Stabilizer-expressible
/// strategies come back as tableaus, everything else dense.
ReceivedState merlin_state(const MerlinStrategy& strategy, const ProtocolGraph& g,
                           const ProtocolFixture* fixture, RandomStream& rng);

enum class Branch { Computation = 0, Test1 = 1, Test2 = 2 };

struct RoundOutcome {
  bool accept = false;
  Branch branch = Branch::Test1;
  std::optional<SyndromeRecord> record;  // relaxed test branches only
};

/// One protocol round: branch drawn as [0,q) -> computation,
/// [q, q+(1-q)/2) -> test 1, rest -> test 2. The computation branch runs the
/// fixture's pattern (framed when a frame is supplied); test branches run the
/// relaxed tests, or the strict test in strict mode.
RoundOutcome arthur_round(ReceivedState state, const ProtocolGraph& g,
                          const CorrectableSet& gamma, const ProtocolParams& params,
                          const ProtocolFixture* fixture, bool strict_mode,
                          const std::optional<BitVec>& frame, RandomStream& rng);

struct AcceptanceReport {
  PassEstimate acc;    // all branches pooled
  PassEstimate comp;   // conditional on each branch
  PassEstimate test1;
  PassEstimate test2;
};

using SyndromeTraceSink = std::function<void(uint64_t shot, const SyndromeRecord&)>;

/// Fresh Merlin state and channel sample per shot; honest computation runs
/// framed iff the sampled Z-pattern is in Gamma (the frame surrogate is a
/// perfect decoder on Gamma only). Shot i draws from seed-split stream i, so
/// worker count does not change results. A trace sink receives one syndrome
/// record per relaxed-test shot and forces single-worker execution so the
/// trace order is deterministic.
AcceptanceReport estimate_acceptance(const MerlinStrategy& strategy, const NoiseChannel& channel,
                                     const ProtocolGraph& g, const CorrectableSet& gamma,
                                     const ProtocolParams& params, const ProtocolFixture* fixture,
                                     bool strict_mode, uint64_t shots, uint64_t seed,
                                     unsigned workers = 1,
                                     const SyndromeTraceSink& trace = {});

struct AmplifyReport {
  uint64_t experiments = 0;
  uint64_t rejected = 0;
  PassEstimate per_run;         // pooled over all runs of all experiments
  double reject_rate() const {
    return experiments == 0 ? 0.0 : static_cast<double>(rejected) / experiments;
  }
  double chernoff_reference = 0.0;   // exp(-2 r (p_run - 1/2)^2)
  double binomial_reference = 0.0;   // majority tail of Bin(r, 1 - p_run)
};

/// r parallel protocol instances with majority voting. In correlated mode a
/// shared weight-<=w Z pattern (always correctable) hits every instance of an
/// experiment on top of the independent channel noise, so runs are correlated
/// while each run's conditional failure stays bounded.
AmplifyReport amplify(const MerlinStrategy& strategy, const NoiseChannel& channel,
                      const ProtocolGraph& g, const CorrectableSet& gamma,
                      const ProtocolParams& params, const ProtocolFixture* fixture,
                      uint64_t experiments, bool correlated_noise, uint64_t seed);

struct CodeDemoReport {
  std::string code_name;
  uint64_t shots = 0;
  double mean_fidelity = 0.0;
  double infidelity() const { return 1.0 - mean_fidelity; }
  double weight2_mass = 0.0;        // exact P[error weight >= 2]
  PassEstimate acceptance;          // fixed verifier measurement {|psi_L><psi_L|, rest}
  double trace_distance_mean = 0.0; // (1/2)||rho_mean - |psi_L><psi_L|||_1
  bool weight1_all_corrected = false;
};

/// Encode -> channel -> syndrome-correct -> compare pipeline on a small code.
/// Also checks exhaustively that every weight-1 error the code claims to
/// correct really is corrected.
CodeDemoReport code_correction_demo(const StabilizerCode& code, const NoiseChannel& channel,
                                    const DenseState& witness, uint64_t shots, uint64_t seed);

}  // namespace qmalab
