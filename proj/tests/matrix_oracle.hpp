#pragma once

// Test-side brute-force oracle: explicit 2^n x 2^n complex matrices built
// from Pauli letters by Kronecker products. Kept independent of the library's
// PauliString/DenseState arithmetic on purpose.

#include <complex>
#include <vector>

#include "qmalab/dense.hpp"
#include "qmalab/pauli.hpp"

namespace oracle {

using C = std::complex<double>;
using CMat = std::vector<std::vector<C>>;

inline CMat pauli_matrix(char op) {
  const C i{0.0, 1.0};
  switch (op) {
    case 'I': return {{1, 0}, {0, 1}};
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
  }
  throw std::invalid_argument("pauli_matrix: bad op");
}

inline CMat kron(const CMat& a, const CMat& b) {
  std::size_t ra = a.size(), rb = b.size();
  CMat out(ra * rb, std::vector<C>(ra * rb));
  for (std::size_t i = 0; i < ra; ++i) {
    for (std::size_t j = 0; j < ra; ++j) {
      for (std::size_t k = 0; k < rb; ++k) {
        for (std::size_t l = 0; l < rb; ++l) {
          out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return out;
}

inline CMat matmul(const CMat& a, const CMat& b) {
  std::size_t n = a.size();
  CMat out(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

// Matrix of a phased PauliString; qubit q occupies bit q of the index, so the
// letter at higher q goes on the left of the Kronecker product.
inline CMat matrix_of(const qmalab::PauliString& p) {
  CMat m{{1.0}};
  for (std::size_t q = 0; q < p.num_qubits(); ++q) m = kron(pauli_matrix(p.op_at(q)), m);
  C phase = 1.0;
  switch (p.phase()) {
    case qmalab::Phase::PlusOne: break;
    case qmalab::Phase::PlusI: phase = C{0.0, 1.0}; break;
    case qmalab::Phase::MinusOne: phase = -1.0; break;
    case qmalab::Phase::MinusI: phase = C{0.0, -1.0}; break;
  }
  for (auto& row : m) {
    for (auto& x : row) x *= phase;
  }
  return m;
}

inline bool approx_equal(const CMat& a, const CMat& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
    }
  }
  return true;
}

inline std::vector<C> apply(const CMat& m, const std::vector<C>& v) {
  std::vector<C> out(v.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

inline C dot(const std::vector<C>& a, const std::vector<C>& b) {
  C acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// Reduced density matrix over the high qubits [n_low, n), tracing out the low
// ones. Index convention matches DenseState (qubit q <-> bit q).
inline CMat reduced_density_high(const qmalab::DenseState& s, std::size_t n_low) {
  std::size_t n = s.num_qubits();
  std::size_t dim_hi = std::size_t{1} << (n - n_low);
  std::size_t dim_lo = std::size_t{1} << n_low;
  CMat rho(dim_hi, std::vector<C>(dim_hi, 0.0));
  for (std::size_t r = 0; r < dim_hi; ++r) {
    for (std::size_t c = 0; c < dim_hi; ++c) {
      for (std::size_t l = 0; l < dim_lo; ++l) {
        rho[r][c] += s.amp((r << n_low) | l) * std::conj(s.amp((c << n_low) | l));
      }
    }
  }
  return rho;
}

}  // namespace oracle
