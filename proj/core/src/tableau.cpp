#include "qmalab/tableau.hpp"

#include <stdexcept>
#include <string>

namespace qmalab {

StabilizerTableau::StabilizerTableau(std::size_t n) : n_(n) {
  stab_.reserve(n);
  destab_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    stab_.push_back(PauliString::single(n, q, 'Z'));
    destab_.push_back(PauliString::single(n, q, 'X'));
  }
}

StabilizerTableau StabilizerTableau::plus_state(std::size_t n) {
  StabilizerTableau t(n);
  for (std::size_t q = 0; q < n; ++q) t.apply_h(q);
  return t;
}

void StabilizerTableau::check_index(std::size_t q) const {
  if (q >= n_) {
    throw std::out_of_range("tableau: qubit index " + std::to_string(q) + " out of range (n=" +
                            std::to_string(n_) + ")");
  }
}

void StabilizerTableau::check_observable(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("tableau: observable acts on " +
                                std::to_string(p.num_qubits()) + " qubits, state has " +
                                std::to_string(n_));
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("tableau: observable must carry a real phase, got " +
                                std::string(phase_to_string(p.phase())));
  }
}

void StabilizerTableau::apply_h(std::size_t q) {
  check_index(q);
  for (auto& r : stab_) r.conj_h(q);
  for (auto& r : destab_) r.conj_h(q);
}

void StabilizerTableau::apply_s(std::size_t q) {
  check_index(q);
  for (auto& r : stab_) r.conj_s(q);
  for (auto& r : destab_) r.conj_s(q);
}

void StabilizerTableau::apply_x(std::size_t q) {
  check_index(q);
  for (auto& r : stab_) r.conj_x(q);
  for (auto& r : destab_) r.conj_x(q);
}

void StabilizerTableau::apply_z(std::size_t q) {
  check_index(q);
  for (auto& r : stab_) r.conj_z(q);
  for (auto& r : destab_) r.conj_z(q);
}

void StabilizerTableau::apply_cz(std::size_t a, std::size_t b) {
  check_index(a);
  check_index(b);
  if (a == b) throw std::invalid_argument("tableau: CZ targets must be distinct");
  for (auto& r : stab_) r.conj_cz(a, b);
  for (auto& r : destab_) r.conj_cz(a, b);
}

void StabilizerTableau::apply_cnot(std::size_t control, std::size_t target) {
  check_index(control);
  check_index(target);
  if (control == target) throw std::invalid_argument("tableau: CNOT targets must be distinct");
  for (auto& r : stab_) r.conj_cnot(control, target);
  for (auto& r : destab_) r.conj_cnot(control, target);
}

void StabilizerTableau::apply(const CliffordGate& g) {
  switch (g.kind) {
    case CliffordGate::Kind::H: apply_h(g.a); break;
    case CliffordGate::Kind::S: apply_s(g.a); break;
    case CliffordGate::Kind::X: apply_x(g.a); break;
    case CliffordGate::Kind::Z: apply_z(g.a); break;
    case CliffordGate::Kind::CZ: apply_cz(g.a, g.b); break;
    case CliffordGate::Kind::CNOT: apply_cnot(g.a, g.b); break;
  }
}

int StabilizerTableau::expectation(const PauliString& p) const {
  check_observable(p);
  if (p.is_identity_ops()) return p.phase() == Phase::PlusOne ? 1 : -1;
  for (const auto& s : stab_) {
    if (!s.commutes(p)) return 0;
  }
  // p commutes with the whole group, so it is +-(a product of generators);
  // the destabilizers pick out which ones.
  PauliString acc(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!destab_[i].commutes(p)) acc *= stab_[i];
  }
  if (!acc.same_ops(p)) {
    throw std::logic_error("tableau: commuting observable not reachable from generators");
  }
  uint8_t rel = acc.phase_exponent_over(p);
  if (rel == 0) return 1;
  if (rel == 2) return -1;
  throw std::logic_error("tableau: imaginary relative phase in deterministic measurement");
}

int StabilizerTableau::measure_pauli(const PauliString& p, RandomStream& rng) {
  check_observable(p);
  std::size_t pivot = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stab_[i].commutes(p)) {
      pivot = i;
      break;
    }
  }
  if (pivot == n_) {
    return expectation(p);  // deterministic; state unchanged
  }
  // Random outcome: fix up every other anticommuting row, then install +-p.
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != pivot && !stab_[i].commutes(p)) stab_[i] *= stab_[pivot];
    if (!destab_[i].commutes(p)) destab_[i] *= stab_[pivot];
  }
  destab_[pivot] = stab_[pivot];
  bool minus = rng.next_bool();
  stab_[pivot] = p;
  if (minus) stab_[pivot].negate();
  return minus ? -1 : 1;
}

int StabilizerTableau::measure_qubit(std::size_t q, char basis, RandomStream& rng) {
  check_index(q);
  return measure_pauli(PauliString::single(n_, q, basis), rng);
}

bool StabilizerTableau::same_state_as(const StabilizerTableau& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (expectation(other.stab_[i]) != 1) return false;
  }
  return true;
}

bool StabilizerTableau::invariants_hold() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stab_[i].is_hermitian() || !destab_[i].is_hermitian()) return false;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!stab_[i].commutes(stab_[j])) return false;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      bool expect_anticommute = (i == j);
      if (stab_[j].commutes(destab_[i]) != !expect_anticommute) return false;
    }
  }
  // Full symplectic rank of the 2n x 2n GF(2) matrix of all rows.
  std::vector<BitVec> rows;
  rows.reserve(2 * n_);
  auto symplectic_row = [this](const PauliString& p) {
    BitVec row(2 * n_);
    for (std::size_t q = 0; q < n_; ++q) {
      row.set(q, p.x_bit(q));
      row.set(n_ + q, p.z_bit(q));
    }
    return row;
  };
  for (const auto& p : stab_) rows.push_back(symplectic_row(p));
  for (const auto& p : destab_) rows.push_back(symplectic_row(p));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n_ && rank < rows.size(); ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank == 2 * n_;
}

void apply_circuit(StabilizerTableau& state, const std::vector<CliffordGate>& gates) {
  for (const auto& g : gates) state.apply(g);
}

std::vector<CliffordGate> random_clifford_circuit(std::size_t n, std::size_t gate_count,
                                                  RandomStream& rng) {
  std::vector<CliffordGate> gates;
  gates.reserve(gate_count);
  for (std::size_t i = 0; i < gate_count; ++i) {
    uint64_t pick = rng.next_below(n >= 2 ? 6 : 4);
    std::size_t a = rng.next_below(n);
    switch (pick) {
      case 0: gates.push_back(CliffordGate::h(a)); break;
      case 1: gates.push_back(CliffordGate::s(a)); break;
      case 2: gates.push_back(CliffordGate::x(a)); break;
      case 3: gates.push_back(CliffordGate::z(a)); break;
      default: {
        std::size_t b = rng.next_below(n - 1);
        if (b >= a) ++b;
        gates.push_back(pick == 4 ? CliffordGate::cz(a, b) : CliffordGate::cnot(a, b));
        break;
      }
    }
  }
  return gates;
}

}  // namespace qmalab
