#include "ids/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ids/errors.hpp"

namespace ids {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  require(trials > 0, "wilson_interval: no trials");
  require(successes <= trials, "wilson_interval: more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

MeanEstimate mean_estimate(std::span<const double> xs) {
  require(!xs.empty(), "mean_estimate: empty sample");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::uint64_t beta_binomial_upper_quantile(std::uint64_t n, double a, double b, double tail) {
  require(a > 0.0 && b > 0.0, "beta_binomial: shape parameters must be positive");
  require(tail > 0.0 && tail < 1.0, "beta_binomial: tail must be in (0,1)");
  const double dn = static_cast<double>(n);
  auto log_pmf = [&](double j) {
    return std::lgamma(dn + 1.0) - std::lgamma(j + 1.0) - std::lgamma(dn - j + 1.0) + std::lgamma(j + a) +
           std::lgamma(dn - j + b) - std::lgamma(dn + a + b) + std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  };
  const auto mode = static_cast<std::uint64_t>(std::min(dn, std::floor(dn * a / (a + b))));
  const double log_mode = log_pmf(static_cast<double>(mode));
  // walk away from the mode with the pmf ratio until terms are negligible
  constexpr double cutoff = 1e-40;
  std::vector<double> up{1.0};
  for (std::uint64_t j = mode; j < n; ++j) {
    const double dj = static_cast<double>(j);
    const double next = up.back() * (dn - dj) * (dj + a) / ((dj + 1.0) * (dn - dj - 1.0 + b));
    if (next < cutoff) break;
    up.push_back(next);
  }
  double below = 0.0;
  double w = 1.0;
  for (std::uint64_t j = mode; j > 0; --j) {
    const double dj = static_cast<double>(j);
    w *= dj * (dn - dj + b) / ((dn - dj + 1.0) * (dj - 1.0 + a));
    if (w < cutoff) break;
    below += w;
  }
  double above = 0.0;
  for (double v : up) above += v;
  const double scale = std::exp(log_mode);
  const double total = (below + above) * scale;
  // tail mass P(X > mode + i) = sum of up[i+1..]
  double acc = 0.0;
  for (std::size_t i = up.size(); i-- > 0;) {
    if ((acc + up[i]) * scale / total > tail) return mode + i;
    acc += up[i];
  }
  return mode > 0 ? mode - 1 : 0;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), "ks_statistic: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < x.size() || j < y.size()) {
    const double v = (j >= y.size() || (i < x.size() && x[i] <= y[j])) ? x[i] : y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return best;
}

double ks_critical_1pct(std::size_t n1, std::size_t n2) {
  const double c = std::sqrt(-0.5 * std::log(0.005));
  return c * std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * static_cast<double>(n2)));
}

}  // namespace ids
