#include "ids/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ids/errors.hpp"
#include "ids/statistics.hpp"

namespace ids {

OrliczSpec OrliczSpec::power(double p) {
  require(p >= 1.0, "power Orlicz function needs p >= 1");
  return {OrliczFamily::power, p, 2.0};
}

OrliczSpec OrliczSpec::psi(double p, double M) {
  require(p >= 1.0 && M >= 2.0, "psi_{p,M} needs p >= 1 and M >= 2");
  return {OrliczFamily::psi, p, M};
}

OrliczSpec OrliczSpec::Psi(double p) {
  require(p >= 1.0, "Psi_p needs p >= 1");
  return {OrliczFamily::Psi, p, 2.0};
}

double OrliczSpec::operator()(double x) const {
  const double y = std::pow(x, p);
  switch (family) {
    case OrliczFamily::power: return y;
    case OrliczFamily::psi: return std::exp(y) / M;
    case OrliczFamily::Psi: return std::expm1(y);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string OrliczSpec::tag() const {
  switch (family) {
    case OrliczFamily::power: return "power";
    case OrliczFamily::psi: return "psi";
    case OrliczFamily::Psi: return "Psi";
  }
  return "unknown";
}

double orlicz_mean(std::span<const double> xs, const OrliczSpec& spec, double C) {
  double sum = 0.0;
  for (double x : xs) sum += spec(std::abs(x) / C);
  return sum / static_cast<double>(xs.size());
}

double orlicz_norm(std::span<const double> xs, const OrliczSpec& spec, double rel_tol) {
  require(!xs.empty(), "orlicz_norm: empty sample");
  double top = 0.0;
  for (double x : xs) top = std::max(top, std::abs(x));
  if (top == 0.0) return 0.0;
  auto ok = [&](double C) { return orlicz_mean(xs, spec, C) <= 1.0; };

  constexpr double ceiling = 1e300;
  double hi = top;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > ceiling) return std::numeric_limits<double>::infinity();
  }
  double lo = hi;
  while (ok(lo)) {
    lo *= 0.5;
    if (lo < top * 1e-300) return 0.0;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

TailCheck orlicz_tail_check(std::span<const double> xs, const OrliczSpec& spec, double D, std::size_t grid) {
  require(!xs.empty(), "orlicz_tail_check: empty sample");
  require(D > 0.0, "orlicz_tail_check requires D > 0");
  std::vector<double> a;
  a.reserve(xs.size());
  for (double x : xs) a.push_back(std::abs(x));
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  TailCheck out;
  const std::size_t points = std::min(grid, n);
  for (std::size_t g = 0; g < points; ++g) {
    const std::size_t idx = points == 1 ? n - 1 : g * (n - 1) / (points - 1);
    const double y = a[idx];
    if (y <= 0.0) continue;
    const auto at_least = static_cast<std::uint64_t>(a.end() - std::lower_bound(a.begin(), a.end(), y));
    const double bound = 1.0 / spec(y / D);
    ++out.grid_points;
    if (wilson_interval(at_least, n).lo > bound) ++out.violations;
  }
  return out;
}

double orlicz_tail_norm_bound(double B, double C, double M, double p) {
  require(B > 0.0 && C > 0.0 && M > 1.0 && p > 0.0, "orlicz_tail_norm_bound: parameters out of range");
  return std::pow((B + M - 1.0) / ((M - 1.0) * C), 1.0 / p);
}

}  // namespace ids
