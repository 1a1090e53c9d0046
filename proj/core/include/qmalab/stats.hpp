#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qmalab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Binomial proportion estimate with the 95% Wilson score interval.
struct ProportionEstimate {
  uint64_t successes = 0;
  uint64_t trials = 0;

  double mean() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }

  Interval wilson95() const { return wilson(1.959963984540054); }

  Interval wilson(double z) const {
    if (trials == 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = mean();
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
  }

  /// 3-sigma half-width of the naive binomial estimator, floored to the
  /// worst case when the empirical rate sits at 0 or 1.
  double three_sigma() const {
    if (trials == 0) return 1.0;
    double n = static_cast<double>(trials);
    double p = mean();
    double var = p * (1.0 - p);
    if (var == 0.0) var = 0.25 / n;  // conservative floor
    return 3.0 * std::sqrt(var / n);
  }
};

inline double binomial_coefficient(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (unsigned i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

inline double binomial_pmf(unsigned n, unsigned k, double p) {
  return binomial_coefficient(n, k) * std::pow(p, static_cast<double>(k)) *
         std::pow(1.0 - p, static_cast<double>(n - k));
}

/// P[Bin(n, p) <= k]
inline double binomial_cdf(unsigned n, unsigned k, double p) {
  double s = 0.0;
  for (unsigned i = 0; i <= k && i <= n; ++i) s += binomial_pmf(n, i, p);
  return s;
}

/// P[Bin(n, p) >= k]
inline double binomial_tail_geq(unsigned n, unsigned k, double p) {
  if (k == 0) return 1.0;
  return 1.0 - binomial_cdf(n, k - 1, p);
}

/// Probability that a majority vote over r (odd) runs rejects when each run
/// independently fails with probability p_fail.
inline double majority_reject_prob(unsigned r, double p_fail) {
  if (r % 2 == 0) throw std::invalid_argument("majority vote needs an odd run count");
  return binomial_tail_geq(r, (r + 1) / 2, p_fail);
}

/// Pearson chi-square statistic for two Bernoulli samples (1 dof). Inputs are
/// success/failure counts of each sample.
inline double chi_square_two_proportions(uint64_t s1, uint64_t f1, uint64_t s2, uint64_t f2) {
  double n1 = static_cast<double>(s1 + f1);
  double n2 = static_cast<double>(s2 + f2);
  double total = n1 + n2;
  double ps = static_cast<double>(s1 + s2) / total;
  double pf = 1.0 - ps;
  if (ps == 0.0 || pf == 0.0) return 0.0;  // identical degenerate distributions
  double stat = 0.0;
  auto add = [&stat](double observed, double expected) {
    double d = observed - expected;
    stat += d * d / expected;
  };
  add(static_cast<double>(s1), n1 * ps);
  add(static_cast<double>(f1), n1 * pf);
  add(static_cast<double>(s2), n2 * ps);
  add(static_cast<double>(f2), n2 * pf);
  return stat;
}

/// Critical value of chi-square with 1 dof at significance 0.01.
inline constexpr double kChiSquare1Dof001 = 6.634896601021217;

}  // namespace qmalab
