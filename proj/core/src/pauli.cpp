#include "qmalab/pauli.hpp"

namespace qmalab {

PauliString PauliString::from_ops(std::string_view s) {
  Phase phase = Phase::PlusOne;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    bool minus = s[0] == '-';
    s.remove_prefix(1);
    bool imag = !s.empty() && s[0] == 'i';
    if (imag) s.remove_prefix(1);
    if (minus) {
      phase = imag ? Phase::MinusI : Phase::MinusOne;
    } else {
      phase = imag ? Phase::PlusI : Phase::PlusOne;
    }
  }
  PauliString p(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case 'I': break;
      case 'X': p.xs_.set(q, true); break;
      case 'Z': p.zs_.set(q, true); break;
      case 'Y':
        p.xs_.set(q, true);
        p.zs_.set(q, true);
        break;
      default:
        throw std::invalid_argument("PauliString::from_ops: bad letter '" +
                                    std::string(1, s[q]) + "'");
    }
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, char op) {
  if (qubit >= n) {
    throw std::invalid_argument("PauliString::single: qubit index out of range");
  }
  PauliString p(n);
  p.set_op(qubit, op);
  return p;
}

void PauliString::set_op(std::size_t q, char op) {
  Phase keep = phase();
  switch (op) {
    case 'I':
      xs_.set(q, false);
      zs_.set(q, false);
      break;
    case 'X':
      xs_.set(q, true);
      zs_.set(q, false);
      break;
    case 'Y':
      xs_.set(q, true);
      zs_.set(q, true);
      break;
    case 'Z':
      xs_.set(q, false);
      zs_.set(q, true);
      break;
    default:
      throw std::invalid_argument("PauliString::set_op: bad letter '" + std::string(1, op) + "'");
  }
  set_phase(keep);
}

std::string PauliString::to_string() const {
  std::string s = phase_to_string(phase());
  s.reserve(s.size() + num_qubits());
  for (std::size_t q = 0; q < num_qubits(); ++q) s.push_back(op_at(q));
  return s;
}

}  // namespace qmalab
