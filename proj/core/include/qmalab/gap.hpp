#pragma once

#include <cstdint>
#include <stdexcept>

namespace qmalab {

/// Analytic protocol parameters. a = 1 - 2^-t and b = 2^-t are the verifier
/// circuit's completeness/soundness after standard error reduction; s is the
/// computation-failure exponent; delta the channel badness; q the probability
/// of the computation branch.
struct ProtocolParams {
  double q = 0.5;
  double epsilon = 1.0 / 64.0;
  int s = 3;
  int t = 4;
  double delta = 0.0;
  int r = 15;              // amplification runs (odd)
  uint64_t shots = 10000;
  uint64_t seed = 0x5eed0001u;

  double a() const { return 1.0 - b(); }
  double b() const;
  void validate() const;
};

struct AnalyticDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything the gap analysis produces, all evaluated at the optimizing
/// branch probability q*.
struct GapReport {
  double q_star = 0.0;
  double alpha = 0.0;
  double beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
  double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0;
  double sqrt_term = 0.0;       // sqrt(4 eps - 4 eps^2)
  double paper_bound = 0.0;     // 25/(64^2*2+64) - delta
  bool paper_bound_holds = false;
  bool paper_preset = false;    // eps = 1/64, s >= 3, t >= 4
  double grid_q = 0.0;          // argmax over the q grid of min(D1,D2,D3)
  double grid_gap = 0.0;
  double equalize_residual = 0.0;  // |D1(q*) - D3(q*)|
  double failed_delta_max = 0.0;   // max_q of the strict-test protocol gap
  bool failed_nonpositive = false;
};

double alpha_of(const ProtocolParams& p, double q);
double beta1_of(const ProtocolParams& p, double q);
double beta2_of(const ProtocolParams& p, double q);
double beta3_of(const ProtocolParams& p, double q);
double delta1_of(const ProtocolParams& p, double q);
double delta2_of(const ProtocolParams& p, double q);
double delta3_of(const ProtocolParams& p, double q);

/// The gap of the strict-test protocol that cannot work:
/// q[(1-2^-s)(1-2^-t) - 1] + (1-q)(eps - 1/2).
double failed_protocol_gap(const ProtocolParams& p, double q);

/// q* = (eps/2) / (1 + eps/2 - (1-2^-s) b - 2^-s - sqrt(4 eps - 4 eps^2));
/// evaluates all bounds there, verifies Delta1(q*) = Delta3(q*), scans a q
/// grid for the argmax of min(Delta_i) and for the failed-protocol maximum.
/// Throws AnalyticDomainError when the q* expression leaves (0, 1].
GapReport gap_analysis(const ProtocolParams& p, double grid_step = 1e-5);

}  // namespace qmalab
