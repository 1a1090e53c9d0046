#pragma once

#include <complex>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "qmalab/dense.hpp"
#include "qmalab/pauli.hpp"

namespace qmalab {

/// One-logical-qubit stabilizer code with a syndrome lookup decoder built
/// from the weight-<=1 errors it is meant to correct.
struct StabilizerCode {
  std::string name;
  std::size_t n = 0;                  // physical qubits
  std::vector<PauliString> generators;
  PauliString logical_x;
  PauliString logical_z;
  /// Errors the lookup decoder corrects exactly (identity + the listed set).
  std::vector<PauliString> correctable_errors;

  /// Enc(alpha|0> + beta|1>) as a dense n-qubit state.
  DenseState encode(const DenseState& qubit) const;

  /// Deterministic syndrome of a Pauli-errored codeword: bit i is 1 when
  /// generator i reads -1.
  uint32_t syndrome_of(const DenseState& state) const;

  /// Lookup correction for a syndrome; identity for syndrome 0 and for
  /// syndromes outside the table.
  const PauliString& correction_for(uint32_t syndrome) const;

 private:
  void build_lookup() const;
  mutable std::unordered_map<uint32_t, PauliString> lookup_;
  friend StabilizerCode five_qubit_code();
  friend StabilizerCode phase_flip_repetition_code();
};

/// [[5,1,3]] code; corrects every weight-1 Pauli error.
StabilizerCode five_qubit_code();

/// 3-qubit repetition code in the X basis (|+++>/|--->); corrects single Z
/// errors, the channel model the graph tests reduce to.
StabilizerCode phase_flip_repetition_code();

/// Eigenvalues of a Hermitian matrix (row-major, dim x dim) via cyclic
/// Jacobi. Small matrices only; used for mixed-state trace distances.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> matrix,
                                          std::size_t dim);

/// (1/2) * sum |eigenvalues(rho - sigma)| for density matrices given
/// row-major.
double trace_distance_mixed(const std::vector<std::complex<double>>& rho,
                            const std::vector<std::complex<double>>& sigma, std::size_t dim);

/// rho += |psi><psi| * weight
void accumulate_outer_product(std::vector<std::complex<double>>& rho, const DenseState& psi,
                              double weight);

}  // namespace qmalab
