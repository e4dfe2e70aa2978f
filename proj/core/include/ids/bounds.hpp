#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ids {

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  double total = 0.0;
  std::vector<std::pair<std::string, bool>> side_conditions;
  bool valid = true;
  // The bound carries no information (error >= 1, probability <= 0 or >= 1).
  bool vacuous = false;

  double term(const std::string& label) const;
  bool condition(const std::string& label) const;
};

struct SeriesValue {
  double value;
  double tail_bound;  // rigorous bound on the truncated remainder
  int terms;
};

// sum_{q>=0} 2^{-q} sqrt(2 + 2 q log 2)
SeriesValue chaining_series_certified();
double chaining_series();

double k_M(double M);
// 16 (10(M+1)/(log(3/2)(M-1)) + 1/log M)
double k_M_cap(double M);
double k_2();
// 480/log(3/2) + 16/log 2
double theorem1_K();
// 40d + 104 2^d - 51
double theorem1_C(int d);

BoundReport geometric_bound(int d, std::int64_t n, std::int64_t m, std::int64_t r);
BoundReport decomposition_bound(int d, std::int64_t n, std::int64_t m, std::int64_t r);
double expectation_convergence_bound(int d, std::int64_t n, std::int64_t r);

enum class Theorem { thm2, thm3 };
int dimension_k(int d, Theorem which);

// floor(n^{1/k}) computed exactly
std::uint64_t integer_root(std::uint64_t n, int k);

BoundReport thm2_error_bound(int d, std::uint64_t n, std::int64_t r, int k);
BoundReport thm2_probability(int d, std::uint64_t n, double M, int k);
BoundReport thm1_min_side(int d, double alpha, double beta);
BoundReport thm3_probability(int d, std::uint64_t n, std::int64_t r, int k);

double cor59_probability(double s, double kappa, double M);
BoundReport cor511_probability(double s, double kappa);

double bernstein_bound(double sigma2, double C, double x);
double massart_threshold(double EZ, double sigma2, double EU, double eta);
// eta solving K_2 sqrt(s) + 2 sqrt(2 s eta) + 2 eta = kappa s
double massart_eta(double kappa, double s);

}  // namespace ids
