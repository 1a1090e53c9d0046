#pragma once

#include <cstddef>
#include <vector>

#include "qmalab/pauli.hpp"
#include "qmalab/random.hpp"

namespace qmalab {

struct CliffordGate {
  enum class Kind { H, S, X, Z, CZ, CNOT };
  Kind kind;
  std::size_t a = 0;
  std::size_t b = 0;  // second index for CZ/CNOT

  static CliffordGate h(std::size_t q) { return {Kind::H, q, 0}; }
  static CliffordGate s(std::size_t q) { return {Kind::S, q, 0}; }
  static CliffordGate x(std::size_t q) { return {Kind::X, q, 0}; }
  static CliffordGate z(std::size_t q) { return {Kind::Z, q, 0}; }
  static CliffordGate cz(std::size_t a, std::size_t b) { return {Kind::CZ, a, b}; }
  static CliffordGate cnot(std::size_t c, std::size_t t) { return {Kind::CNOT, c, t}; }
};

/// Aaronson-Gottesman style generator tableau: n stabilizer and n destabilizer
/// rows, each a phased PauliString. Supports the Clifford gates used by the
/// protocol plus projective measurement of arbitrary Hermitian Pauli products.
class StabilizerTableau {
 public:
  /// |0...0>
  explicit StabilizerTableau(std::size_t n);

  /// |+...+>
  static StabilizerTableau plus_state(std::size_t n);

  std::size_t num_qubits() const { return n_; }

  void apply_h(std::size_t q);
  void apply_s(std::size_t q);
  void apply_x(std::size_t q);
  void apply_z(std::size_t q);
  void apply_cz(std::size_t a, std::size_t b);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const CliffordGate& g);

  /// +1/-1 when +-p is in the stabilizer group, 0 otherwise. Leaves the state
  /// untouched; p must carry a real phase.
  int expectation(const PauliString& p) const;

  /// Projective measurement of a Hermitian Pauli product. Returns +1/-1 and
  /// collapses the state; deterministic outcomes never modify it.
  int measure_pauli(const PauliString& p, RandomStream& rng);

  /// Single-qubit measurement in basis 'X', 'Y' or 'Z'.
  int measure_qubit(std::size_t q, char basis, RandomStream& rng);

  const PauliString& stabilizer(std::size_t i) const { return stab_[i]; }
  const PauliString& destabilizer(std::size_t i) const { return destab_[i]; }

  /// Same physical state: every stabilizer of other has expectation +1 here.
  bool same_state_as(const StabilizerTableau& other) const;

  /// Pairwise commutation, stabilizer/destabilizer pairing and full symplectic
  /// rank. O(n^3); meant for tests.
  bool invariants_hold() const;

 private:
  void check_index(std::size_t q) const;
  void check_observable(const PauliString& p) const;

  std::size_t n_;
  std::vector<PauliString> stab_;
  std::vector<PauliString> destab_;
};

void apply_circuit(StabilizerTableau& state, const std::vector<CliffordGate>& gates);

/// Random circuit over {H, S, X, Z, CZ, CNOT} with the given gate count.
std::vector<CliffordGate> random_clifford_circuit(std::size_t n, std::size_t gate_count,
                                                  RandomStream& rng);

}  // namespace qmalab
