#pragma once

#include <cstdint>
#include <span>

namespace ids {

// two-sided 99% standard normal quantile
inline constexpr double kZ99 = 2.5758293035489004;
// one-sided tail of three standard deviations
inline constexpr double kThreeSigmaTail = 0.0013498980316301;

struct Interval {
  double lo;
  double hi;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

struct MeanEstimate {
  double mean;
  double stderr_;
};
MeanEstimate mean_estimate(std::span<const double> xs);

// Smallest q with P(X > q) <= tail for X ~ BetaBinomial(n, a, b).
std::uint64_t beta_binomial_upper_quantile(std::uint64_t n, double a, double b, double tail);

// Two-sample Kolmogorov-Smirnov statistic and its asymptotic 1% critical value.
double ks_statistic(std::span<const double> a, std::span<const double> b);
double ks_critical_1pct(std::size_t n1, std::size_t n2);

}  // namespace ids
