#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmalab/pauli.hpp"
#include "qmalab/random.hpp"
#include "qmalab/tableau.hpp"

namespace qmalab {

inline constexpr std::size_t kDenseQubitCap = 14;

/// Brute-force state vector (qubit q <-> bit q of the amplitude index).
/// Deliberately independent of the tableau code paths so the two can check
/// each other.
class DenseState {
 public:
  DenseState() = default;

  /// |0...0>
  explicit DenseState(std::size_t n);

  static DenseState plus_state(std::size_t n);
  static DenseState from_amplitudes(std::size_t n, std::vector<std::complex<double>> amps);
  static DenseState random_state(std::size_t n, RandomStream& rng);

  std::size_t num_qubits() const { return n_; }
  uint64_t dim() const { return uint64_t{1} << n_; }

  std::complex<double> amp(uint64_t index) const { return amps_[index]; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  void apply_h(std::size_t q);
  void apply_s(std::size_t q);
  void apply_x(std::size_t q);
  void apply_y(std::size_t q);
  void apply_z(std::size_t q);
  void apply_rz(std::size_t q, double theta);  // diag(1, e^{i theta})
  void apply_cz(std::size_t a, std::size_t b);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply(const CliffordGate& g);
  void apply_pauli(const PauliString& p);

  /// <this|other>
  std::complex<double> inner(const DenseState& other) const;

  double norm() const;
  void normalize();

  /// <psi| P |psi> for Hermitian P (real by construction).
  double expectation(const PauliString& p) const;

  /// |psi> <- (I + sign*P)/2 |psi>, unnormalized.
  void apply_pauli_projector(const PauliString& p, int sign);

  /// Probability that qubit q reads 0 in the computational basis.
  double prob_zero(std::size_t q) const;

  /// Computational-basis measurement of one qubit; returns the bit and
  /// collapses (normalized).
  int measure_qubit_z(std::size_t q, RandomStream& rng);

  /// Measurement in basis {X,Y,Z}; returns +1/-1 and collapses.
  int measure_qubit(std::size_t q, char basis, RandomStream& rng);

  /// XY-plane measurement at the given angle: eigenbasis (|0> +- e^{i a}|1>)/sqrt(2).
  /// Returns the outcome bit (0 for +). The measured qubit is left in |bit>,
  /// i.e. the basis is rotated to computational before collapsing.
  int measure_xy(std::size_t q, double angle, RandomStream& rng);

  /// Kron: this state on the low-index qubits, other on the high ones.
  DenseState tensor(const DenseState& other) const;

  /// Reorder qubits: new qubit q is old qubit perm[q].
  DenseState permute_qubits(const std::vector<std::size_t>& perm) const;

  bool operator==(const DenseState& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::complex<double>> amps_;
};

/// sqrt(1 - |<a|b>|^2); pure-state trace distance.
double trace_distance(const DenseState& a, const DenseState& b);

/// |<a|b>|^2
double fidelity(const DenseState& a, const DenseState& b);

/// Reconstructs the tableau's state as a dense vector (global phase
/// arbitrary). Throws when the qubit count exceeds the cap.
DenseState dense_from_tableau(const StabilizerTableau& t, std::size_t cap = kDenseQubitCap);

void apply_circuit(DenseState& state, const std::vector<CliffordGate>& gates);

}  // namespace qmalab
