#include "qmalab/gap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qmalab {

double ProtocolParams::b() const { return std::ldexp(1.0, -t); }

void ProtocolParams::validate() const {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("params: q must be in [0,1]");
  if (epsilon <= 0.0 || epsilon > 0.5) {
    throw std::invalid_argument("params: epsilon must be in (0, 1/2]");
  }
  if (s < 1 || t < 1) throw std::invalid_argument("params: s and t must be >= 1");
  if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("params: delta must be in [0,1]");
  if (a() - b() <= 0.0) throw std::invalid_argument("params: need a - b > 0");
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("params: r must be odd and >= 1");
}

namespace {
double pow2neg(int e) { return std::ldexp(1.0, -e); }
double sqrt_term_of(double eps) { return std::sqrt(4.0 * eps - 4.0 * eps * eps); }
}  // namespace

double alpha_of(const ProtocolParams& p, double q) {
  return q * (1.0 - pow2neg(p.s)) * p.a() + (1.0 - q) * (1.0 - p.delta);
}

double beta1_of(const ProtocolParams& p, double q) {
  return q + (1.0 - q) * (1.0 - p.epsilon / 2.0);
}

double beta2_of(const ProtocolParams& p, double q) {
  return q + (1.0 - q) * (1.0 - p.epsilon);
}

double beta3_of(const ProtocolParams& p, double q) {
  double s_fail = pow2neg(p.s);
  return q * ((1.0 - s_fail) * p.b() + s_fail + sqrt_term_of(p.epsilon)) + (1.0 - q);
}

double delta1_of(const ProtocolParams& p, double q) { return alpha_of(p, q) - beta1_of(p, q); }
double delta2_of(const ProtocolParams& p, double q) { return alpha_of(p, q) - beta2_of(p, q); }
double delta3_of(const ProtocolParams& p, double q) { return alpha_of(p, q) - beta3_of(p, q); }

double failed_protocol_gap(const ProtocolParams& p, double q) {
  return q * ((1.0 - pow2neg(p.s)) * (1.0 - pow2neg(p.t)) - 1.0) +
         (1.0 - q) * (p.epsilon - 0.5);
}

GapReport gap_analysis(const ProtocolParams& p, double grid_step) {
  ProtocolParams checked = p;
  checked.validate();

  GapReport rep;
  rep.sqrt_term = sqrt_term_of(p.epsilon);

  double s_fail = pow2neg(p.s);
  double denom = 1.0 + p.epsilon / 2.0 - (1.0 - s_fail) * p.b() - s_fail - rep.sqrt_term;
  if (denom <= 0.0) {
    throw AnalyticDomainError("gap_analysis: q* denominator is " + std::to_string(denom) +
                              "; parameters leave no positive branch probability");
  }
  rep.q_star = (p.epsilon / 2.0) / denom;
  if (rep.q_star <= 0.0 || rep.q_star > 1.0) {
    throw AnalyticDomainError("gap_analysis: q* = " + std::to_string(rep.q_star) +
                              " outside (0, 1]");
  }

  rep.alpha = alpha_of(p, rep.q_star);
  rep.beta1 = beta1_of(p, rep.q_star);
  rep.beta2 = beta2_of(p, rep.q_star);
  rep.beta3 = beta3_of(p, rep.q_star);
  rep.delta1 = rep.alpha - rep.beta1;
  rep.delta2 = rep.alpha - rep.beta2;
  rep.delta3 = rep.alpha - rep.beta3;
  rep.equalize_residual = std::abs(rep.delta1 - rep.delta3);

  rep.paper_bound = 25.0 / (64.0 * 64.0 * 2.0 + 64.0) - p.delta;
  rep.paper_preset = std::abs(p.epsilon - 1.0 / 64.0) < 1e-15 && p.s >= 3 && p.t >= 4;
  rep.paper_bound_holds = rep.delta3 >= rep.paper_bound - 1e-12;

  // Grid scan cross-check of the optimizer.
  double best_q = 0.0;
  double best_gap = -1.0;
  for (double q = 0.0; q <= 1.0 + 1e-12; q += grid_step) {
    double g = std::min({delta1_of(p, q), delta2_of(p, q), delta3_of(p, q)});
    if (g > best_gap) {
      best_gap = g;
      best_q = q;
    }
  }
  rep.grid_q = best_q;
  rep.grid_gap = best_gap;

  // Strict-test protocol: the gap never becomes positive (step 1e-3 grid).
  double failed_max = -1.0;
  for (double q = 0.0; q <= 1.0 + 1e-12; q += 1e-3) {
    failed_max = std::max(failed_max, failed_protocol_gap(p, q));
  }
  rep.failed_delta_max = failed_max;
  rep.failed_nonpositive = failed_max <= 1e-12;
  return rep;
}

}  // namespace qmalab
