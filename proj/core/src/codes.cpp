#include "qmalab/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace qmalab {

DenseState StabilizerCode::encode(const DenseState& qubit) const {
  if (qubit.num_qubits() != 1) throw std::invalid_argument("encode: witness must be one qubit");
  // |0_L> from the projector product on a seed basis state, |1_L> = X_L|0_L>.
  DenseState zero_l(n);
  for (const auto& gen : generators) zero_l.apply_pauli_projector(gen, +1);
  zero_l.apply_pauli_projector(logical_z, +1);
  zero_l.normalize();
  DenseState one_l = zero_l;
  one_l.apply_pauli(logical_x);
  std::vector<std::complex<double>> amps(zero_l.dim());
  std::complex<double> alpha = qubit.amp(0);
  std::complex<double> beta = qubit.amp(1);
  for (uint64_t i = 0; i < zero_l.dim(); ++i) {
    amps[i] = alpha * zero_l.amp(i) + beta * one_l.amp(i);
  }
  return DenseState::from_amplitudes(n, std::move(amps));
}

uint32_t StabilizerCode::syndrome_of(const DenseState& state) const {
  uint32_t syndrome = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    double e = state.expectation(generators[i]);
    if (std::abs(std::abs(e) - 1.0) > 1e-6) {
      throw std::runtime_error("syndrome_of: generator expectation is not +-1; state is not a "
                               "Pauli-errored codeword");
    }
    if (e < 0.0) syndrome |= uint32_t{1} << i;
  }
  return syndrome;
}

void StabilizerCode::build_lookup() const {
  PauliString identity(n);
  lookup_[0] = identity;
  for (const auto& err : correctable_errors) {
    uint32_t syndrome = 0;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (!generators[i].commutes(err)) syndrome |= uint32_t{1} << i;
    }
    lookup_.emplace(syndrome, err);
  }
}

const PauliString& StabilizerCode::correction_for(uint32_t syndrome) const {
  if (lookup_.empty()) build_lookup();
  auto it = lookup_.find(syndrome);
  if (it != lookup_.end()) return it->second;
  return lookup_.at(0);
}

StabilizerCode five_qubit_code() {
  StabilizerCode code;
  code.name = "five-qubit";
  code.n = 5;
  code.generators = {
      PauliString::from_ops("XZZXI"),
      PauliString::from_ops("IXZZX"),
      PauliString::from_ops("XIXZZ"),
      PauliString::from_ops("ZXIXZ"),
  };
  code.logical_x = PauliString::from_ops("XXXXX");
  code.logical_z = PauliString::from_ops("ZZZZZ");
  for (std::size_t q = 0; q < 5; ++q) {
    for (char op : {'X', 'Y', 'Z'}) {
      code.correctable_errors.push_back(PauliString::single(5, q, op));
    }
  }
  return code;
}

StabilizerCode phase_flip_repetition_code() {
  StabilizerCode code;
  code.name = "repetition-z";
  code.n = 3;
  code.generators = {
      PauliString::from_ops("XXI"),
      PauliString::from_ops("IXX"),
  };
  code.logical_x = PauliString::from_ops("ZZZ");  // flips |+++> <-> |--->
  code.logical_z = PauliString::from_ops("XXX");
  for (std::size_t q = 0; q < 3; ++q) {
    code.correctable_errors.push_back(PauliString::single(3, q, 'Z'));
  }
  return code;
}

std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> m, std::size_t dim) {
  if (m.size() != dim * dim) throw std::invalid_argument("hermitian_eigenvalues: bad shape");
  auto at = [&m, dim](std::size_t r, std::size_t c) -> std::complex<double>& {
    return m[r * dim + c];
  };
  // Cyclic Jacobi with complex rotations.
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) off += std::norm(at(p, q));
    }
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        std::complex<double> apq = at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        double app = at(p, p).real();
        double aqq = at(q, q).real();
        // Phase out the off-diagonal element, then a real Jacobi rotation.
        std::complex<double> phase = apq / std::abs(apq);
        double tau = (aqq - app) / (2.0 * std::abs(apq));
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        // Columns p and q: [c, -s*conj(phase); s*phase, c] rotation.
        for (std::size_t k = 0; k < dim; ++k) {
          std::complex<double> akp = at(k, p);
          std::complex<double> akq = at(k, q);
          at(k, p) = c * akp - s * std::conj(phase) * akq;
          at(k, q) = s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          std::complex<double> apk = at(p, k);
          std::complex<double> aqk = at(q, k);
          at(p, k) = c * apk - s * phase * aqk;
          at(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) eig[i] = at(i, i).real();
  return eig;
}

double trace_distance_mixed(const std::vector<std::complex<double>>& rho,
                            const std::vector<std::complex<double>>& sigma, std::size_t dim) {
  if (rho.size() != dim * dim || sigma.size() != dim * dim) {
    throw std::invalid_argument("trace_distance_mixed: bad shape");
  }
  std::vector<std::complex<double>> diff(dim * dim);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rho[i] - sigma[i];
  double acc = 0.0;
  for (double e : hermitian_eigenvalues(std::move(diff), dim)) acc += std::abs(e);
  return 0.5 * acc;
}

void accumulate_outer_product(std::vector<std::complex<double>>& rho, const DenseState& psi,
                              double weight) {
  std::size_t dim = psi.dim();
  if (rho.size() != dim * dim) rho.assign(dim * dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      rho[r * dim + c] += weight * psi.amp(r) * std::conj(psi.amp(c));
    }
  }
}

}  // namespace qmalab
