#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "qmalab/bits.hpp"
#include "qmalab/graph.hpp"
#include "qmalab/pauli.hpp"
#include "qmalab/random.hpp"
#include "qmalab/stats.hpp"

namespace qmalab {

/// A Z-error support over the graph's qubits.
using ErrorPattern = BitVec;

struct PauliEvent {
  PauliString op;
  double probability = 0.0;
};

/// Stochastic Pauli channel. Restricted to Pauli channels so the stabilizer
/// simulation stays exact; general CPTP maps are exercised only through the
/// dense oracle.
class NoiseChannel {
 public:
  enum class Kind { None, ZOnly, IidPauli, Correlated };

  static NoiseChannel none(std::size_t n);
  static NoiseChannel z_only(std::size_t n, double pz);
  static NoiseChannel iid_pauli(std::size_t n, double px, double py, double pz);
  static NoiseChannel depolarizing(std::size_t n, double p);
  /// Categorical draw over the listed multi-qubit Pauli events; the remaining
  /// probability mass is the identity.
  static NoiseChannel correlated(std::size_t n, std::vector<PauliEvent> events);

  Kind kind() const { return kind_; }
  std::size_t num_qubits() const { return n_; }
  bool is_z_only() const { return kind_ == Kind::None || kind_ == Kind::ZOnly; }
  double px() const { return px_; }
  double py() const { return py_; }
  double pz() const { return pz_; }
  /// Per-site probability of any non-identity Pauli (iid kinds only).
  double site_error_rate() const { return px_ + py_ + pz_; }
  const std::vector<PauliEvent>& events() const { return events_; }

  PauliString sample(RandomStream& rng) const;

 private:
  Kind kind_ = Kind::None;
  std::size_t n_ = 0;
  double px_ = 0.0, py_ = 0.0, pz_ = 0.0;
  std::vector<PauliEvent> events_;
};

/// Reduces an arbitrary Pauli error on |G> to its Z-pattern: each X component
/// at vertex j is traded for Z on the neighbors S_j through the stabilizer
/// relation, so p|G> = |G_u> up to phase.
ErrorPattern pauli_to_z_pattern(const ProtocolGraph& g, const PauliString& p);

/// Bounded-weight correctable family Gamma with the induced syndrome sets
/// Omega1 (restrictions to V1 black) and Omega2 (V1 white).
struct CorrectableSet {
  std::size_t weight_bound = 0;
  std::vector<BitVec> members;  // Gamma, lexicographic by weight then index
  std::unordered_set<BitVec, BitVecHash> omega1;
  std::unordered_set<BitVec, BitVecHash> omega2;

  bool contains(const BitVec& u) const { return u.popcount() <= weight_bound; }
  bool syndrome1_ok(const BitVec& s) const { return omega1.count(s) != 0; }
  bool syndrome2_ok(const BitVec& s) const { return omega2.count(s) != 0; }
};

inline constexpr std::size_t kDefaultEnumerationCap = 1u << 20;

/// Enumerates Gamma = { u : wt(u) <= w } and derives Omega1/Omega2. Throws
/// when the member count would exceed the cap.
CorrectableSet build_correctable_set(const ProtocolGraph& g, std::size_t weight_bound,
                                     std::size_t cap = kDefaultEnumerationCap);

struct GoodnessEstimate {
  uint64_t bad = 0;
  uint64_t shots = 0;
  double delta() const { return shots == 0 ? 0.0 : static_cast<double>(bad) / shots; }
  Interval wilson95() const { return ProportionEstimate{bad, shots}.wilson95(); }
};

/// Monte Carlo estimate of delta = P[Z-pattern of a channel sample falls
/// outside Gamma]; per-sample classification is exact for Pauli channels.
GoodnessEstimate estimate_channel_goodness(const ProtocolGraph& g, const NoiseChannel& ch,
                                           const CorrectableSet& gamma, uint64_t shots,
                                           RandomStream& rng);

/// Closed form of the same quantity for an iid Z-only channel: P[wt > w] of
/// Binomial(N, pz). The Monte Carlo path is checked against this.
double z_only_delta_formula(std::size_t n, double pz, std::size_t weight_bound);

}  // namespace qmalab
