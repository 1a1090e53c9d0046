#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qmalab/bits.hpp"

namespace qmalab {

/// Overall phase of a Pauli operator, i^value.
enum class Phase : uint8_t { PlusOne = 0, PlusI = 1, MinusOne = 2, MinusI = 3 };

inline const char* phase_to_string(Phase p) {
  switch (p) {
    case Phase::PlusOne: return "+";
    case Phase::PlusI: return "+i";
    case Phase::MinusOne: return "-";
    case Phase::MinusI: return "-i";
  }
  return "?";
}

/// Phased n-qubit Pauli operator.
///
/// X and Z supports are stored as packed bit rows so that products and
/// commutation checks run word-parallel (AND/XOR + popcount); the shot sweeps
/// multiply thousands of these per trial. Internally the operator is kept as
/// i^k * prod_j X_j^{x_j} Z_j^{z_j} (site order X-then-Z); the public phase()
/// reports the conventional phase with Y = iXZ folded back in.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(std::size_t n) : xs_(n), zs_(n) {}

  /// Parse e.g. "XZZI", "+XZZI", "-iYX". Order of letters is qubit order.
  static PauliString from_ops(std::string_view s);

  /// Single-site operator, op in {'I','X','Y','Z'}, embedded in n qubits.
  static PauliString single(std::size_t n, std::size_t qubit, char op);

  std::size_t num_qubits() const { return xs_.size(); }

  bool x_bit(std::size_t q) const { return xs_.get(q); }
  bool z_bit(std::size_t q) const { return zs_.get(q); }

  char op_at(std::size_t q) const {
    bool x = xs_.get(q), z = zs_.get(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }

  /// Sets the site operator, adjusting the stored phase so the conventional
  /// phase of the whole string is unchanged.
  void set_op(std::size_t q, char op);

  Phase phase() const {
    // stored = i^k (XZ form); conventional c = k - (#Y sites) mod 4
    std::size_t y = y_count();
    return static_cast<Phase>((exponent_ + 3u * (y & 3u)) & 3u);
  }

  void set_phase(Phase p) {
    std::size_t y = y_count();
    exponent_ = (static_cast<uint8_t>(p) + (y & 3u)) & 3u;
  }

  bool is_hermitian() const {
    Phase p = phase();
    return p == Phase::PlusOne || p == Phase::MinusOne;
  }

  /// True when every site is I (phase may still be nontrivial).
  bool is_identity_ops() const { return !xs_.any() && !zs_.any(); }

  void negate() { exponent_ = (exponent_ + 2u) & 3u; }

  bool commutes(const PauliString& other) const {
    require_same_size(other);
    return xs_.parity_and(other.zs_) == zs_.parity_and(other.xs_);
  }

  /// Operator product with exact phase.
  PauliString& operator*=(const PauliString& other) {
    require_same_size(other);
    if (zs_.parity_and(other.xs_)) exponent_ = (exponent_ + 2u) & 3u;
    exponent_ = (exponent_ + other.exponent_) & 3u;
    xs_ ^= other.xs_;
    zs_ ^= other.zs_;
    return *this;
  }

  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }

  bool operator==(const PauliString& other) const = default;

  /// True when the operators agree up to phase.
  bool same_ops(const PauliString& other) const {
    return xs_ == other.xs_ && zs_ == other.zs_;
  }

  /// i-exponent of (*this) / other, defined when same_ops(other).
  uint8_t phase_exponent_over(const PauliString& other) const {
    return (exponent_ + 4u - other.exponent_) & 3u;
  }

  /// Canonical text form, e.g. "+XZZII" or "-iYI".
  std::string to_string() const;

  const BitVec& xs() const { return xs_; }
  const BitVec& zs() const { return zs_; }

  // In-place conjugation by Clifford gates, U P U^dagger. Phase updates are
  // exact in the XZ-ordered convention.
  void conj_h(std::size_t q) {
    bool x = xs_.get(q), z = zs_.get(q);
    if (x && z) exponent_ = (exponent_ + 2u) & 3u;
    xs_.set(q, z);
    zs_.set(q, x);
  }
  void conj_s(std::size_t q) {
    bool x = xs_.get(q);
    if (x) {
      exponent_ = (exponent_ + 1u) & 3u;
      zs_.flip(q);
    }
  }
  void conj_x(std::size_t q) {
    if (zs_.get(q)) exponent_ = (exponent_ + 2u) & 3u;
  }
  void conj_z(std::size_t q) {
    if (xs_.get(q)) exponent_ = (exponent_ + 2u) & 3u;
  }
  void conj_cz(std::size_t a, std::size_t b) {
    bool xa = xs_.get(a), xb = xs_.get(b);
    if (xa && xb) exponent_ = (exponent_ + 2u) & 3u;
    if (xb) zs_.flip(a);
    if (xa) zs_.flip(b);
  }
  void conj_cnot(std::size_t control, std::size_t target) {
    if (xs_.get(control)) xs_.flip(target);
    if (zs_.get(target)) zs_.flip(control);
  }

 private:
  void require_same_size(const PauliString& other) const {
    if (num_qubits() != other.num_qubits()) {
      throw std::invalid_argument("PauliString size mismatch: " + std::to_string(num_qubits()) +
                                  " vs " + std::to_string(other.num_qubits()));
    }
  }

  std::size_t y_count() const {
    std::size_t c = 0;
    auto xw = xs_.words();
    auto zw = zs_.words();
    for (std::size_t k = 0; k < xw.size(); ++k) c += std::popcount(xw[k] & zw[k]);
    return c;
  }

  uint8_t exponent_ = 0;  // i^exponent_, XZ-ordered site convention
  BitVec xs_;
  BitVec zs_;
};

}  // namespace qmalab
