#include "ids/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ids/errors.hpp"

namespace ids {

namespace {

const double kLog2 = std::log(2.0);
const double kLog32 = std::log(1.5);

double term_q(int q) { return std::ldexp(std::sqrt(2.0 + 2.0 * q * kLog2), -q); }

void finish(BoundReport& rep) {
  rep.valid = std::all_of(rep.side_conditions.begin(), rep.side_conditions.end(),
                          [](const auto& c) { return c.second; });
}

double sum_terms(const BoundReport& rep) {
  double s = 0.0;
  for (const auto& t : rep.terms) s += t.second;
  return s;
}

}  // namespace

double BoundReport::term(const std::string& label) const {
  for (const auto& t : terms) {
    if (t.first == label) return t.second;
  }
  throw PreconditionError("bound report " + name + " has no term " + label);
}

bool BoundReport::condition(const std::string& label) const {
  for (const auto& c : side_conditions) {
    if (c.first == label) return c.second;
  }
  throw PreconditionError("bound report " + name + " has no side condition " + label);
}

SeriesValue chaining_series_certified() {
  // For q >= Q consecutive terms shrink at least by
  // rho = sqrt(1 + log2/(1 + Q log2)) / 2, so the remainder after Q - 1 is
  // at most t_Q / (1 - rho).
  double sum = 0.0;
  int q = 0;
  double tail = std::numeric_limits<double>::infinity();
  while (true) {
    const double rho = 0.5 * std::sqrt(1.0 + kLog2 / (1.0 + q * kLog2));
    tail = term_q(q) / (1.0 - rho);
    if (tail < 1e-13) break;
    sum += term_q(q);
    ++q;
  }
  return {sum, tail, q};
}

double chaining_series() { return chaining_series_certified().value; }

double k_M(double M) {
  require(M >= 2.0, "K_M requires M >= 2");
  return (40.0 * (M + 1.0) / (kLog32 * (M - 1.0)) + 4.0 / std::log(M)) * chaining_series();
}

double k_M_cap(double M) {
  require(M >= 2.0, "K_M requires M >= 2");
  return 16.0 * (10.0 * (M + 1.0) / (kLog32 * (M - 1.0)) + 1.0 / std::log(M));
}

double k_2() { return k_M(2.0); }

double theorem1_K() { return 480.0 / kLog32 + 16.0 / kLog2; }

double theorem1_C(int d) { return 40.0 * d + 104.0 * std::ldexp(1.0, d) - 51.0; }

BoundReport geometric_bound(int d, std::int64_t n, std::int64_t m, std::int64_t r) {
  require(d >= 1 && n >= 1 && m >= 1 && r >= 0, "geometric_bound: parameters out of range");
  const double p2 = std::ldexp(1.0, d) - 1.0;
  const double dn = static_cast<double>(n), dm = static_cast<double>(m), dr = static_cast<double>(r);
  BoundReport rep;
  rep.name = "geometric";
  rep.terms = {{"32d/n", 32.0 * d / dn},
               {"104(2^d-1)m/n", 104.0 * p2 * dm / dn},
               {"(4d+2r(2^d-1)+36dr)/m", (4.0 * d + 2.0 * dr * p2 + 36.0 * d * dr) / dm}};
  rep.total = sum_terms(rep);
  rep.side_conditions = {{"n>4m", n > 4 * m}, {"m>2r+1", m > 2 * r + 1}};
  finish(rep);
  rep.vacuous = rep.total >= 1.0;
  return rep;
}

BoundReport decomposition_bound(int d, std::int64_t n, std::int64_t m, std::int64_t r) {
  require(d >= 1 && r >= 0 && m >= 1, "decomposition_bound: parameters out of range");
  require(n > 2 * m, "decomposition_bound requires n > 2m");
  require(m > 2 * r + 1, "decomposition_bound requires m > 2r+1");
  const double L = static_cast<double>((n / m) * m);
  const double dn = static_cast<double>(n), dm = static_cast<double>(m), dr = static_cast<double>(r);
  const double md = std::pow(dm, d);
  const double shell = md - std::pow(dm - 2.0, d) + std::pow(dm - 2.0 * dr, d) - std::pow(dm - 2.0 * dr - 2.0, d) +
                       17.0 * (md - std::pow(dm - 2.0 * dr, d));
  BoundReport rep;
  rep.name = "decomposition";
  rep.terms = {{"b(L)/|L|", 8.0 * (1.0 - std::pow((L - 2.0) / L, d))},
               {"26(|Ln|-|Ln^m|)/|Ln^m|", 26.0 * (std::pow(dn / (dn - 2.0 * dm), d) - 1.0)},
               {"small-cube boundary", shell / md}};
  rep.total = sum_terms(rep);
  rep.side_conditions = {{"n>2m", true}, {"m>2r+1", true}};
  finish(rep);
  rep.vacuous = rep.total >= 1.0;
  return rep;
}

double expectation_convergence_bound(int d, std::int64_t n, std::int64_t r) {
  require(d >= 1 && r >= 0, "expectation_convergence_bound: parameters out of range");
  require(2 * r + 1 < n, "expectation_convergence_bound requires 2r+1 < n");
  const double p2 = std::ldexp(1.0, d) - 1.0;
  const double dr = static_cast<double>(r);
  return (4.0 * d + 2.0 * dr * p2 + 36.0 * d * dr) / static_cast<double>(n);
}

int dimension_k(int d, Theorem which) {
  require(d >= 1, "dimension_k requires d >= 1");
  if (which == Theorem::thm2) return d == 1 ? 4 : d == 2 ? 3 : 2;
  if (d >= 5) return 2;
  // smallest integer k with k d > 4 + d
  return (4 + d) / d + 1;
}

std::uint64_t integer_root(std::uint64_t n, int k) {
  require(k >= 1, "integer_root requires k >= 1");
  if (k == 1 || n < 2) return n;
  auto fits = [&](std::uint64_t a) {
    // a^k <= n without overflow
    std::uint64_t p = 1;
    for (int i = 0; i < k; ++i) {
      if (p > n / a) return false;
      p *= a;
    }
    return p <= n;
  };
  auto a = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (a > 1 && !fits(a)) --a;
  while (fits(a + 1)) ++a;
  return a;
}

BoundReport thm2_error_bound(int d, std::uint64_t n, std::int64_t r, int k) {
  require(d >= 1 && r >= 0 && k >= 1, "thm2_error_bound: parameters out of range");
  const double dn = static_cast<double>(n);
  const double root = std::pow(dn, 1.0 / k);
  require(root > 1.0, "thm2_error_bound requires n^(1/k) > 1");
  const double p2 = std::ldexp(1.0, d) - 1.0;
  const double dr = static_cast<double>(r);
  BoundReport rep;
  rep.name = "thm2_error";
  rep.terms = {{"32d/n", 32.0 * d / dn},
               {"104(2^d-1)/n^(1-1/k)", 104.0 * p2 / std::pow(dn, 1.0 - 1.0 / k)},
               {"(8d+4r(2^d-1)+72dr+1)/(n^(1/k)-1)", (8.0 * d + 4.0 * dr * p2 + 72.0 * d * dr + 1.0) / (root - 1.0)}};
  rep.total = sum_terms(rep);
  const double rk = std::pow(2.0 * dr + 1.0, k);
  rep.side_conditions = {{"n>(2r+1)^k", dn > rk}, {"n>16", n > 16}};
  finish(rep);
  rep.vacuous = rep.total >= 1.0;
  return rep;
}

BoundReport thm2_probability(int d, std::uint64_t n, double M, int k) {
  require(d >= 1 && k >= 1, "thm2_probability: parameters out of range");
  require(n > 16, "thm2_probability requires n > 16");
  require(M >= 2.0, "thm2_probability requires M >= 2");
  const std::uint64_t a = integer_root(n, k);
  const std::uint64_t b = n / a;
  const double km = k_M(M);
  const double exponent = std::sqrt(std::pow(static_cast<double>(b), d)) / (static_cast<double>(a) * km);
  BoundReport rep;
  rep.name = "thm2_probability";
  rep.terms = {{"floor(n^(1/k))", static_cast<double>(a)},
               {"floor(n/floor(n^(1/k)))", static_cast<double>(b)},
               {"K_M", km},
               {"exponent", exponent}};
  rep.total = 1.0 - M * std::exp(-exponent);
  rep.side_conditions = {{"n>16", true}, {"M>=2", true}};
  finish(rep);
  rep.vacuous = rep.total <= 0.0;
  return rep;
}

BoundReport thm1_min_side(int d, double alpha, double beta) {
  require(d >= 3, "thm1_min_side requires d >= 3");
  require(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0, "thm1_min_side requires alpha, beta in (0,1)");
  const double C = theorem1_C(d);
  const double K = theorem1_K();
  BoundReport rep;
  rep.name = "thm1_min_side";
  rep.terms = {{"(C/beta+1)^2", std::pow(C / beta + 1.0, 2)},
               {"((log(2/alpha)K)^(2/(d-2))+1)^2", std::pow(std::pow(std::log(2.0 / alpha) * K, 2.0 / (d - 2)) + 1.0, 2)},
               {"16", 16.0},
               {"C", C},
               {"K", K}};
  rep.total = std::max({rep.terms[0].second, rep.terms[1].second, rep.terms[2].second});
  rep.side_conditions = {{"d>=3", true}};
  finish(rep);
  return rep;
}

BoundReport thm3_probability(int d, std::uint64_t n, std::int64_t r, int k) {
  require(d >= 1 && r >= 0 && k >= 1, "thm3_probability: parameters out of range");
  const int denom = d * k - d - 4;
  require(denom > 0, "thm3_probability requires dk - d - 4 > 0");
  require(n >= 1, "thm3_probability requires n >= 1");
  const std::uint64_t a = integer_root(n, k);
  const std::uint64_t b = n / a;
  const double exponent = std::pow(static_cast<double>(b), d) / static_cast<double>(a) / 24.0;
  const double threshold = std::pow(std::pow(12.0 * k_2(), 2.0 / d) + 1.0, static_cast<double>(d * k) / denom);
  const double dn = static_cast<double>(n);
  BoundReport rep;
  rep.name = "thm3_probability";
  rep.terms = {{"floor(n^(1/k))", static_cast<double>(a)},
               {"floor(n/floor(n^(1/k)))", static_cast<double>(b)},
               {"exponent", exponent},
               {"n_threshold", threshold}};
  rep.total = 1.0 - std::exp(-exponent);
  rep.side_conditions = {{"n>16", n > 16},
                         {"n>(2r+1)^k", dn > std::pow(2.0 * static_cast<double>(r) + 1.0, k)},
                         {"n>((12K2)^(2/d)+1)^(dk/(dk-d-4))", dn > threshold}};
  finish(rep);
  rep.vacuous = rep.total <= 0.0;
  return rep;
}

double cor59_probability(double s, double kappa, double M) {
  require(s >= 1.0 && kappa > 0.0 && M >= 2.0, "cor59_probability: parameters out of range");
  return M * std::exp(-std::sqrt(s) * kappa / k_M(M));
}

BoundReport cor511_probability(double s, double kappa) {
  require(kappa > 0.0 && kappa <= 1.0, "cor511_probability requires kappa in (0,1]");
  require(s >= 1.0, "cor511_probability requires s >= 1");
  const double K2 = k_2();
  const double rs = std::sqrt(s);
  const double root_form = std::exp(-0.5 * std::pow(std::sqrt(kappa + 1.0) - 1.0, 2) * s + 0.5 * K2 * rs);
  const double form12 = std::exp(-kappa * kappa * s / 12.0 + 0.5 * K2 * rs);
  const double form24 = std::exp(-kappa * kappa * s / 24.0);
  const bool c1 = s >= std::pow(K2 / kappa, 2);
  const bool c2 = s >= std::pow(6.0 * K2 / (kappa * kappa), 2);
  const bool c3 = s >= std::pow(12.0 * K2 / (kappa * kappa), 2);
  BoundReport rep;
  rep.name = "cor511";
  rep.terms = {{"root_form", root_form}, {"kappa2_12_form", form12}, {"kappa2_24_form", form24}};
  rep.side_conditions = {{"s>=(K2/kappa)^2", c1},
                         {"s>=(6K2/kappa^2)^2", c2},
                         {"s>=(12K2/kappa^2)^2", c3}};
  finish(rep);
  double best = std::numeric_limits<double>::infinity();
  if (c1) best = std::min(best, root_form);
  if (c2) best = std::min(best, form12);
  if (c3) best = std::min(best, form24);
  const bool any = c1 || c2 || c3;
  rep.total = any ? best : 1.0;
  rep.vacuous = !any || rep.total >= 1.0;
  return rep;
}

double bernstein_bound(double sigma2, double C, double x) {
  require(sigma2 > 0.0 && C > 0.0 && x > 0.0, "bernstein_bound requires positive arguments");
  return std::exp(-x * x / (2.0 * (sigma2 + C / 3.0 * x)));
}

double massart_threshold(double EZ, double sigma2, double EU, double eta) {
  require(EZ >= 0.0 && sigma2 >= 0.0 && EU >= 0.0 && eta >= 0.0, "massart_threshold requires nonnegative arguments");
  return EZ + 2.0 * std::sqrt((sigma2 + EU) * eta) + 2.0 * eta;
}

double massart_eta(double kappa, double s) {
  require(kappa > 0.0 && s >= 1.0, "massart_eta: parameters out of range");
  const double K2 = k_2();
  const double inner = 0.5 * (kappa + 1.0) * s - 0.5 * K2 * std::sqrt(s);
  const double y = std::sqrt(std::max(inner, 0.0)) - std::sqrt(0.5 * s);
  require(y >= 0.0, "massart_eta requires s >= (K2/kappa)^2");
  return y * y;
}

}  // namespace ids
