#include "qmalab/dense.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qmalab {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};

void check_norm_tolerance(double norm) {
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::runtime_error("DenseState: norm drifted to " + std::to_string(norm));
  }
}
}  // namespace

DenseState::DenseState(std::size_t n) : n_(n), amps_(uint64_t{1} << n) { amps_[0] = 1.0; }

DenseState DenseState::plus_state(std::size_t n) {
  DenseState s(n);
  double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  std::fill(s.amps_.begin(), s.amps_.end(), std::complex<double>(a, 0.0));
  return s;
}

DenseState DenseState::from_amplitudes(std::size_t n, std::vector<std::complex<double>> amps) {
  if (amps.size() != (uint64_t{1} << n)) {
    throw std::invalid_argument("DenseState: amplitude count does not match qubit count");
  }
  DenseState s(n);
  s.amps_ = std::move(amps);
  check_norm_tolerance(s.norm());
  return s;
}

DenseState DenseState::random_state(std::size_t n, RandomStream& rng) {
  DenseState s(n);
  for (auto& a : s.amps_) {
    // Box-Muller; Gaussian amplitudes give Haar-distributed directions.
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    double u3 = rng.next_double();
    double u4 = rng.next_double();
    double r1 = std::sqrt(-2.0 * std::log(1.0 - u1));
    double r2 = std::sqrt(-2.0 * std::log(1.0 - u3));
    a = {r1 * std::cos(2.0 * M_PI * u2), r2 * std::cos(2.0 * M_PI * u4)};
  }
  s.normalize();
  return s;
}

void DenseState::apply_h(std::size_t q) {
  uint64_t bit = uint64_t{1} << q;
  double inv_sqrt2 = M_SQRT1_2;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) continue;
    auto a0 = amps_[i];
    auto a1 = amps_[i | bit];
    amps_[i] = inv_sqrt2 * (a0 + a1);
    amps_[i | bit] = inv_sqrt2 * (a0 - a1);
  }
}

void DenseState::apply_s(std::size_t q) {
  uint64_t bit = uint64_t{1} << q;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] *= kImag;
  }
}

void DenseState::apply_x(std::size_t q) {
  uint64_t bit = uint64_t{1} << q;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void DenseState::apply_y(std::size_t q) {
  uint64_t bit = uint64_t{1} << q;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) {
      auto a0 = amps_[i];
      amps_[i] = -kImag * amps_[i | bit];
      amps_[i | bit] = kImag * a0;
    }
  }
}

void DenseState::apply_z(std::size_t q) {
  uint64_t bit = uint64_t{1} << q;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] = -amps_[i];
  }
}

void DenseState::apply_rz(std::size_t q, double theta) {
  uint64_t bit = uint64_t{1} << q;
  std::complex<double> ph = std::exp(kImag * theta);
  for (uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) amps_[i] *= ph;
  }
}

void DenseState::apply_cz(std::size_t a, std::size_t b) {
  uint64_t mask = (uint64_t{1} << a) | (uint64_t{1} << b);
  for (uint64_t i = 0; i < dim(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void DenseState::apply_cnot(std::size_t control, std::size_t target) {
  uint64_t cbit = uint64_t{1} << control;
  uint64_t tbit = uint64_t{1} << target;
  for (uint64_t i = 0; i < dim(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

void DenseState::apply(const CliffordGate& g) {
  switch (g.kind) {
    case CliffordGate::Kind::H: apply_h(g.a); break;
    case CliffordGate::Kind::S: apply_s(g.a); break;
    case CliffordGate::Kind::X: apply_x(g.a); break;
    case CliffordGate::Kind::Z: apply_z(g.a); break;
    case CliffordGate::Kind::CZ: apply_cz(g.a, g.b); break;
    case CliffordGate::Kind::CNOT: apply_cnot(g.a, g.b); break;
  }
}

void DenseState::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("apply_pauli: size mismatch");
  // Global factor: conventional phase, plus one -i per Y site (X.Z ordering).
  std::complex<double> factor = 1.0;
  switch (p.phase()) {
    case Phase::PlusOne: break;
    case Phase::PlusI: factor = kImag; break;
    case Phase::MinusOne: factor = -1.0; break;
    case Phase::MinusI: factor = -kImag; break;
  }
  uint64_t xmask = 0, zmask = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    if (p.x_bit(q)) xmask |= uint64_t{1} << q;
    if (p.z_bit(q)) zmask |= uint64_t{1} << q;
    if (p.x_bit(q) && p.z_bit(q)) factor *= kImag;  // Y = i X Z
  }
  std::vector<std::complex<double>> out(dim());
  for (uint64_t i = 0; i < dim(); ++i) {
    // (X^x Z^z)|i> = (-1)^{z.i} |i ^ x>
    std::complex<double> v = amps_[i];
    if (std::popcount(i & zmask) & 1) v = -v;
    out[i ^ xmask] = factor * v;
  }
  amps_ = std::move(out);
}

std::complex<double> DenseState::inner(const DenseState& other) const {
  if (n_ != other.n_) throw std::invalid_argument("inner: size mismatch");
  std::complex<double> acc = 0.0;
  for (uint64_t i = 0; i < dim(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

double DenseState::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void DenseState::normalize() {
  double nrm = norm();
  if (nrm == 0.0) throw std::runtime_error("DenseState: cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

double DenseState::expectation(const PauliString& p) const {
  DenseState tmp = *this;
  tmp.apply_pauli(p);
  return inner(tmp).real();
}

void DenseState::apply_pauli_projector(const PauliString& p, int sign) {
  DenseState tmp = *this;
  tmp.apply_pauli(p);
  double s = sign >= 0 ? 0.5 : -0.5;
  for (uint64_t i = 0; i < dim(); ++i) amps_[i] = 0.5 * amps_[i] + s * tmp.amps_[i];
}

double DenseState::prob_zero(std::size_t q) const {
  uint64_t bit = uint64_t{1} << q;
  double acc = 0.0;
  for (uint64_t i = 0; i < dim(); ++i) {
    if (!(i & bit)) acc += std::norm(amps_[i]);
  }
  return acc;
}

int DenseState::measure_qubit_z(std::size_t q, RandomStream& rng) {
  double p0 = prob_zero(q);
  int bit = rng.next_double() < p0 ? 0 : 1;
  uint64_t qbit = uint64_t{1} << q;
  double keep_prob = bit == 0 ? p0 : 1.0 - p0;
  double scale = 1.0 / std::sqrt(keep_prob);
  for (uint64_t i = 0; i < dim(); ++i) {
    bool match = ((i & qbit) != 0) == (bit == 1);
    amps_[i] = match ? amps_[i] * scale : 0.0;
  }
  return bit;
}

int DenseState::measure_qubit(std::size_t q, char basis, RandomStream& rng) {
  switch (basis) {
    case 'Z': return measure_qubit_z(q, rng) == 0 ? 1 : -1;
    case 'X': return measure_xy(q, 0.0, rng) == 0 ? 1 : -1;
    case 'Y': return measure_xy(q, M_PI / 2.0, rng) == 0 ? 1 : -1;
    default: throw std::invalid_argument("measure_qubit: basis must be X, Y or Z");
  }
}

int DenseState::measure_xy(std::size_t q, double angle, RandomStream& rng) {
  // Rotate |+-_angle> onto |0/1>, then measure Z.
  apply_rz(q, -angle);
  apply_h(q);
  return measure_qubit_z(q, rng);
}

DenseState DenseState::tensor(const DenseState& other) const {
  DenseState out(n_ + other.n_);
  for (uint64_t hi = 0; hi < other.dim(); ++hi) {
    for (uint64_t lo = 0; lo < dim(); ++lo) {
      out.amps_[(hi << n_) | lo] = amps_[lo] * other.amps_[hi];
    }
  }
  return out;
}

DenseState DenseState::permute_qubits(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permute_qubits: size mismatch");
  DenseState out(n_);
  for (uint64_t i = 0; i < dim(); ++i) {
    uint64_t j = 0;
    for (std::size_t q = 0; q < n_; ++q) {
      if ((i >> perm[q]) & 1) j |= uint64_t{1} << q;
    }
    out.amps_[j] = amps_[i];
  }
  return out;
}

double trace_distance(const DenseState& a, const DenseState& b) {
  double overlap_sq = std::norm(a.inner(b));
  return std::sqrt(std::max(0.0, 1.0 - overlap_sq));
}

double fidelity(const DenseState& a, const DenseState& b) { return std::norm(a.inner(b)); }

DenseState dense_from_tableau(const StabilizerTableau& t, std::size_t cap) {
  std::size_t n = t.num_qubits();
  if (n > cap) {
    throw std::invalid_argument("dense_from_tableau: " + std::to_string(n) +
                                " qubits exceeds the dense cap of " + std::to_string(cap));
  }
  // Find one computational basis state with nonzero amplitude by measuring a
  // copy in Z everywhere. Every branch of the measurement tree has nonzero
  // probability, so any outcome sequence works; a fixed stream keeps the
  // result deterministic.
  StabilizerTableau probe = t;
  RandomStream branch_picker(0);
  uint64_t basis_index = 0;
  for (std::size_t q = 0; q < n; ++q) {
    int outcome = probe.measure_qubit(q, 'Z', branch_picker);
    if (outcome == -1) basis_index |= uint64_t{1} << q;
  }
  DenseState psi(n);
  psi.amplitudes().assign(psi.dim(), 0.0);
  psi.amplitudes()[basis_index] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    psi.apply_pauli_projector(t.stabilizer(i), +1);
  }
  psi.normalize();
  return psi;
}

void apply_circuit(DenseState& state, const std::vector<CliffordGate>& gates) {
  for (const auto& g : gates) state.apply(g);
}

}  // namespace qmalab
