#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ids/errors.hpp"
#include "ids/operator.hpp"
#include "ids/spectra.hpp"

using namespace ids;

namespace {

PotentialSample constant_field(const Cube& c, double v) {
  return PotentialSample(FieldSpec{}, c.sites(), std::vector<double>(c.size(), v));
}

std::vector<double> laplacian_1d(int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1)));
  return out;
}

}  // namespace

TEST(Eigenvalues, FreeChainClosedForm) {
  const Cube c(1, 5);
  const auto w = eigenvalues(assemble(c, constant_field(c, 0.0)));
  const auto expect = laplacian_1d(5);
  ASSERT_EQ(w.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(w[i], expect[i], 1e-13);
  EXPECT_NEAR(w[0], 0.2679491924311226, 1e-13);
}

TEST(Eigenvalues, SquareIsSumOfChains) {
  for (int n : {2, 3, 7}) {  // side 2 takes the dense path
    const Cube c(2, n);
    const auto w = eigenvalues(assemble(c, constant_field(c, 0.5)));
    std::vector<double> expect;
    for (double a : laplacian_1d(n)) {
      for (double b : laplacian_1d(n)) expect.push_back(a + b + 0.5);
    }
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], expect[i], 1e-12);
  }
}

TEST(Eigenvalues, CubeIsSumOfThreeChains) {
  const Cube c(3, 6);
  const auto w = eigenvalues(assemble(c, constant_field(c, 0.0)));
  std::vector<double> expect;
  for (double a : laplacian_1d(6)) {
    for (double b : laplacian_1d(6)) {
      for (double e : laplacian_1d(6)) expect.push_back(a + b + e);
    }
  }
  std::sort(expect.begin(), expect.end());
  ASSERT_EQ(w.size(), expect.size());
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], expect[i], 1e-12);
}

TEST(Eigenvalues, TraceIsPreserved) {
  FieldSpec spec;
  spec.seed = 4;
  const Cube c(3, 6);
  const PotentialSample w = sample(spec, c);
  const auto ev = eigenvalues(assemble(c, w));
  double trace = 0.0;
  for (double v : w.values()) trace += v + 6.0;
  double sum = 0.0;
  for (double v : ev) sum += v;
  EXPECT_NEAR(sum, trace, 1e-9);
  EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
}

TEST(Eigenvalues, SolverLimit) {
  const Cube c(2, 101);
  EXPECT_THROW(eigenvalues(assemble(c, constant_field(c, 0.0))), SolverLimitError);
}

TEST(Sturm, MatchesEigenvalueCount) {
  std::mt19937_64 g(8);
  FieldSpec spec;
  spec.seed = 21;
  const Cube c(1, 40);
  const RestrictedOperator h = assemble(c, sample(spec, c));
  const auto w = eigenvalues(h);
  for (int i = 0; i < 200; ++i) {
    const double x = std::uniform_real_distribution<double>(-0.5, 5.5)(g);
    EXPECT_EQ(sturm_count(h.diagonal(), h.subdiagonal(), x), count_below(std::span<const double>(w), x));
    EXPECT_EQ(count_below(h, x), count_below(std::span<const double>(w), x));
  }
  // counts are closed at the eigenvalue itself
  EXPECT_EQ(count_below(std::span<const double>(w), w[7]), 8u);
}

TEST(SupNorm, HandComputed) {
  const StepFunction f(0.0, {0.0, 1.0}, {0.5, 1.0});
  const StepFunction g(0.0, {0.5, 2.0}, {0.25, 1.0});
  EXPECT_DOUBLE_EQ(sup_norm_distance(f, g), 0.75);
  EXPECT_EQ(sup_norm_distance(f, f), 0.0);
}

TEST(SupNorm, MonotoneFastPathAgreesWithMerge) {
  std::mt19937_64 g(3);
  std::vector<double> big(5000), small(40);
  for (auto& v : big) v = std::uniform_real_distribution<double>(0, 1)(g);
  for (auto& v : small) v = std::uniform_real_distribution<double>(0, 1)(g);
  std::sort(big.begin(), big.end());
  std::sort(small.begin(), small.end());
  const StepFunction F = counting_function(big, 5000.0), f = counting_function(small, 40.0);
  // brute force over all breakpoints and left limits
  double best = std::abs(F.base() - f.base());
  for (const auto* s : {&big, &small}) {
    for (double x : *s) {
      best = std::max(best, std::abs(F(x) - f(x)));
      best = std::max(best, std::abs(F.left_limit(x) - f.left_limit(x)));
    }
  }
  EXPECT_DOUBLE_EQ(sup_norm_distance(F, f), best);
  EXPECT_DOUBLE_EQ(sup_norm_distance(f, F), best);
}

TEST(Average, OrderIndependentOfInterleaving) {
  const StepFunction a(0.0, {0.0, 2.0}, {0.5, 1.0});
  const StepFunction b(0.0, {1.0}, {1.0});
  const std::vector<StepFunction> fs{a, b};
  const StepFunction m = average(fs);
  EXPECT_EQ(m(-1.0), 0.0);
  EXPECT_EQ(m(0.5), 0.25);
  EXPECT_EQ(m(1.5), 0.75);
  EXPECT_EQ(m(3.0), 1.0);
  const std::vector<double> bad{0.3, 0.3};
  EXPECT_THROW(average(fs, bad), PreconditionError);
}

TEST(Evcf, NormalizedRange) {
  FieldSpec spec;
  spec.seed = 2;
  const Cube c(2, 5);
  const StepFunction f = normalized_evcf(c, sample(spec, c), 25.0);
  EXPECT_DOUBLE_EQ(f.upper_limit(), 1.0);
  EXPECT_EQ(f.lower_limit(), 0.0);
  EXPECT_THROW(normalized_evcf(c, sample(spec, c), 10.0), PreconditionError);
}
