#include "qmalab/noise.hpp"

#include <stdexcept>
#include <string>

namespace qmalab {

NoiseChannel NoiseChannel::none(std::size_t n) {
  NoiseChannel ch;
  ch.kind_ = Kind::None;
  ch.n_ = n;
  return ch;
}

NoiseChannel NoiseChannel::z_only(std::size_t n, double pz) {
  if (pz < 0.0 || pz > 1.0) throw std::invalid_argument("z_only: pz must be in [0,1]");
  NoiseChannel ch;
  ch.kind_ = Kind::ZOnly;
  ch.n_ = n;
  ch.pz_ = pz;
  return ch;
}

NoiseChannel NoiseChannel::iid_pauli(std::size_t n, double px, double py, double pz) {
  if (px < 0.0 || py < 0.0 || pz < 0.0 || px + py + pz > 1.0) {
    throw std::invalid_argument("iid_pauli: probabilities must be nonnegative with sum <= 1");
  }
  NoiseChannel ch;
  ch.kind_ = Kind::IidPauli;
  ch.n_ = n;
  ch.px_ = px;
  ch.py_ = py;
  ch.pz_ = pz;
  return ch;
}

NoiseChannel NoiseChannel::depolarizing(std::size_t n, double p) {
  return iid_pauli(n, p / 3.0, p / 3.0, p / 3.0);
}

NoiseChannel NoiseChannel::correlated(std::size_t n, std::vector<PauliEvent> events) {
  double total = 0.0;
  for (const auto& e : events) {
    if (e.op.num_qubits() != n) {
      throw std::invalid_argument("correlated: event acts on wrong qubit count");
    }
    if (e.probability < 0.0) throw std::invalid_argument("correlated: negative probability");
    total += e.probability;
  }
  if (total > 1.0 + 1e-12) {
    throw std::invalid_argument("correlated: event probabilities sum to " + std::to_string(total));
  }
  NoiseChannel ch;
  ch.kind_ = Kind::Correlated;
  ch.n_ = n;
  ch.events_ = std::move(events);
  return ch;
}

PauliString NoiseChannel::sample(RandomStream& rng) const {
  PauliString p(n_);
  switch (kind_) {
    case Kind::None: break;
    case Kind::ZOnly:
      for (std::size_t q = 0; q < n_; ++q) {
        if (rng.next_double() < pz_) p.set_op(q, 'Z');
      }
      break;
    case Kind::IidPauli:
      for (std::size_t q = 0; q < n_; ++q) {
        double r = rng.next_double();
        if (r < px_) {
          p.set_op(q, 'X');
        } else if (r < px_ + py_) {
          p.set_op(q, 'Y');
        } else if (r < px_ + py_ + pz_) {
          p.set_op(q, 'Z');
        }
      }
      break;
    case Kind::Correlated: {
      double r = rng.next_double();
      double acc = 0.0;
      for (const auto& e : events_) {
        acc += e.probability;
        if (r < acc) return e.op;
      }
      break;  // identity remainder
    }
  }
  return p;
}

ErrorPattern pauli_to_z_pattern(const ProtocolGraph& g, const PauliString& p) {
  if (p.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument("pauli_to_z_pattern: operator size does not match graph");
  }
  ErrorPattern u(g.num_vertices());
  for (std::size_t q = 0; q < g.num_vertices(); ++q) {
    if (p.z_bit(q)) u.flip(q);
    if (p.x_bit(q)) {
      // X_q |G> = (Z over S_q) |G> up to phase
      for (std::size_t nb : g.neighbors(q, Subgraph::Full)) u.flip(nb);
    }
  }
  return u;
}

CorrectableSet build_correctable_set(const ProtocolGraph& g, std::size_t weight_bound,
                                     std::size_t cap) {
  std::size_t n = g.num_vertices();
  double count = 0.0;
  for (std::size_t k = 0; k <= weight_bound && k <= n; ++k) {
    count += binomial_coefficient(static_cast<unsigned>(n), static_cast<unsigned>(k));
  }
  if (count > static_cast<double>(cap)) {
    throw std::length_error("build_correctable_set: enumeration of ~" +
                            std::to_string(static_cast<uint64_t>(count)) +
                            " patterns exceeds the cap of " + std::to_string(cap));
  }

  CorrectableSet gamma;
  gamma.weight_bound = weight_bound;

  // Enumerate grouped by weight: 0^N first, then singles, pairs, ...
  auto emit = [&gamma, n](const std::vector<std::size_t>& sup) {
    BitVec u(n);
    for (std::size_t q : sup) u.set(q, true);
    gamma.members.push_back(std::move(u));
  };
  for (std::size_t w = 0; w <= weight_bound && w <= n; ++w) {
    std::vector<std::size_t> sup;
    auto exact = [&](auto&& self, std::size_t start, std::size_t left) -> void {
      if (left == 0) {
        emit(sup);
        return;
      }
      for (std::size_t q = start; q + left <= n; ++q) {
        sup.push_back(q);
        self(self, q + 1, left - 1);
        sup.pop_back();
      }
    };
    exact(exact, 0, w);
  }

  const auto& v1b = g.v1_black();
  const auto& v1w = g.v1_white();
  for (const auto& u : gamma.members) {
    gamma.omega1.insert(u.select(v1b));
    gamma.omega2.insert(u.select(v1w));
  }
  return gamma;
}

GoodnessEstimate estimate_channel_goodness(const ProtocolGraph& g, const NoiseChannel& ch,
                                           const CorrectableSet& gamma, uint64_t shots,
                                           RandomStream& rng) {
  if (ch.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument("estimate_channel_goodness: channel size does not match graph");
  }
  GoodnessEstimate est;
  est.shots = shots;
  for (uint64_t s = 0; s < shots; ++s) {
    RandomStream trial = rng.split(s);
    PauliString err = ch.sample(trial);
    ErrorPattern u = pauli_to_z_pattern(g, err);
    if (!gamma.contains(u)) ++est.bad;
  }
  return est;
}

double z_only_delta_formula(std::size_t n, double pz, std::size_t weight_bound) {
  double keep = 0.0;
  for (std::size_t k = 0; k <= weight_bound && k <= n; ++k) {
    keep += binomial_pmf(static_cast<unsigned>(n), static_cast<unsigned>(k), pz);
  }
  return 1.0 - keep;
}

}  // namespace qmalab
