#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmalab/bits.hpp"
#include "qmalab/dense.hpp"
#include "qmalab/random.hpp"
#include "qmalab/tableau.hpp"

namespace qmalab {

struct LogicalGate {
  enum class Kind { H, S, T, Z, RZ, CZ };
  Kind kind;
  std::size_t q1 = 0;
  std::size_t q2 = 0;   // CZ partner
  double angle = 0.0;   // RZ

  static LogicalGate h(std::size_t q) { return {Kind::H, q, 0, 0.0}; }
  static LogicalGate s(std::size_t q) { return {Kind::S, q, 0, 0.0}; }
  static LogicalGate t(std::size_t q) { return {Kind::T, q, 0, 0.0}; }
  static LogicalGate z(std::size_t q) { return {Kind::Z, q, 0, 0.0}; }
  static LogicalGate rz(std::size_t q, double angle) { return {Kind::RZ, q, 0, angle}; }
  static LogicalGate cz(std::size_t a, std::size_t b) { return {Kind::CZ, a, b, 0.0}; }
};

/// Measurement-based program on a cluster of wires: one vertex per
/// teleportation step, XY-plane measurement angles, and the classical
/// dependency structure (angle sign flips and final byproduct parities) as
/// lists of earlier measurement outcomes.
struct MeasurementPattern {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> inputs;   // per wire
  std::vector<std::size_t> outputs;  // per wire
  std::vector<std::size_t> order;    // measurement order (all non-output vertices)
  std::vector<double> angle;         // nominal XY angle per vertex (measured only)
  std::vector<std::vector<std::size_t>> angle_flip_deps;  // per vertex
  std::vector<std::vector<std::size_t>> x_deps;           // per wire
  std::vector<std::vector<std::size_t>> z_deps;           // per wire

  std::size_t num_wires() const { return inputs.size(); }
  bool is_output(std::size_t v) const;

  /// Dependencies must point at earlier entries of `order`.
  void validate() const;

  std::string to_text() const;
  static MeasurementPattern from_text(const std::string& text);
};

/// Compiles a gate list over `wires` logical qubits (wires <= 3; gates from
/// {H, S, T, Z, RZ, CZ}) into a cluster pattern whose noiseless execution
/// implements the circuit up to the tracked byproduct.
MeasurementPattern compile_small_circuit(std::size_t wires, const std::vector<LogicalGate>& gates);

/// Dense reference: the compiled circuit applied gate by gate.
DenseState apply_logical_circuit(const DenseState& input, const std::vector<LogicalGate>& gates);

/// Cluster resource state: the input state sits on the input vertices, every
/// other vertex starts as |+>, and CZ is applied along each pattern edge.
DenseState build_resource_state(const MeasurementPattern& p, const DenseState& input);

/// Classical record of a known Z-error pattern over the cluster vertices;
/// measurement outcomes are reinterpreted instead of physically correcting.
using PauliFrame = BitVec;

struct PatternRun {
  std::vector<int> raw_bits;       // per vertex (measured ones)
  std::vector<int> recorded_bits;  // after frame reinterpretation
  std::vector<int> byproduct_x;    // per wire
  std::vector<int> byproduct_z;
  DenseState output_state;         // byproduct-corrected, one qubit per wire
};

/// Executes the pattern on a resource state (consumed), drawing outcomes from
/// rng. When a frame is given, recorded outcomes at frame-marked vertices are
/// flipped before any adaptive or byproduct use, and frame bits on output
/// vertices fold into the Z byproduct.
PatternRun run_pattern(DenseState resource, const MeasurementPattern& p, RandomStream& rng,
                       const std::optional<PauliFrame>& frame = std::nullopt);

/// Tableau entry point: XY-plane angles are non-Clifford in general, so the
/// resource falls back to a dense execution (cap-checked).
PatternRun run_pattern(const StabilizerTableau& resource, const MeasurementPattern& p,
                       RandomStream& rng, const std::optional<PauliFrame>& frame = std::nullopt,
                       std::size_t cap = kDenseQubitCap);

/// Exact byproduct-corrected output distribution over computational
/// measurement of the outputs (2^wires entries), obtained by enumerating all
/// measurement branches. Small patterns only.
std::vector<double> exact_output_distribution(const DenseState& resource,
                                              const MeasurementPattern& p,
                                              const std::optional<PauliFrame>& frame = std::nullopt);

double total_variation_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace qmalab
