#include <gtest/gtest.h>

#include <cmath>

#include "ids/bounds.hpp"
#include "ids/errors.hpp"

using namespace ids;

// Reference values below were computed independently at 30 digits.

TEST(Constants, ChainingSeries) {
  const SeriesValue S = chaining_series_certified();
  EXPECT_NEAR(S.value, 3.56232963933583540506, 1e-12);
  EXPECT_LT(S.tail_bound, 1e-12);
  EXPECT_GE(S.value + S.tail_bound, 3.56232963933583540506 - 1e-14);
}

TEST(Constants, KM) {
  EXPECT_NEAR(k_2(), 1074.851732053127, 1e-9);
  EXPECT_NEAR(k_M(3.0), 715.833162593208125, 1e-9);
  EXPECT_NEAR(k_M(10.0), 435.715712241765667, 1e-9);
  EXPECT_NEAR(theorem1_K(), 1206.9087825949107, 1e-9);
  EXPECT_NEAR(k_M_cap(2.0), theorem1_K(), 1e-9);
  for (double M : {2.0, 3.0, 10.0, 100.0}) EXPECT_LT(k_M(M), k_M_cap(M));
  EXPECT_EQ(theorem1_C(3), 901.0);
  EXPECT_EQ(theorem1_C(1), 197.0);
  EXPECT_THROW(k_M(1.5), PreconditionError);
}

TEST(Geometric, Examples) {
  const BoundReport a = geometric_bound(1, 4000, 10, 0);
  EXPECT_NEAR(a.total, 0.668, 1e-12);
  EXPECT_TRUE(a.valid);
  EXPECT_FALSE(a.vacuous);
  EXPECT_NEAR(geometric_bound(3, 100, 5, 0).total, 39.76, 1e-12);
  const BoundReport bad = geometric_bound(1, 40, 10, 0);
  EXPECT_FALSE(bad.valid);
  EXPECT_FALSE(bad.condition("n>4m"));
  EXPECT_TRUE(bad.condition("m>2r+1"));
}

TEST(Decomposition, ValuesAndOrdering) {
  EXPECT_NEAR(decomposition_bound(1, 100, 10, 1).total, 10.46, 1e-12);
  EXPECT_NEAR(decomposition_bound(3, 20, 4, 1).total, 112.41337037037037, 1e-10);
  EXPECT_NEAR(decomposition_bound(2, 57, 6, 2).total, 32.07495198902606, 1e-10);
  EXPECT_LE(decomposition_bound(2, 57, 6, 2).total, geometric_bound(2, 57, 6, 2).total);
  EXPECT_THROW(decomposition_bound(1, 20, 10, 0), PreconditionError);
  EXPECT_THROW(decomposition_bound(1, 100, 3, 1), PreconditionError);
}

TEST(Expectation, HalvesWhenSideDoubles) {
  EXPECT_DOUBLE_EQ(expectation_convergence_bound(2, 200, 1), expectation_convergence_bound(2, 100, 1) / 2.0);
  EXPECT_DOUBLE_EQ(expectation_convergence_bound(1, 50, 0), 4.0 / 50.0);
}

TEST(Roots, IntegerRoot) {
  EXPECT_EQ(integer_root(1000000, 2), 1000u);
  EXPECT_EQ(integer_root(999999, 2), 999u);
  EXPECT_EQ(integer_root(124, 3), 4u);
  EXPECT_EQ(integer_root(125, 3), 5u);
  EXPECT_EQ(integer_root(18446744073709551615ull, 2), 4294967295u);
}

TEST(DimensionK, Table) {
  EXPECT_EQ(dimension_k(1, Theorem::thm3), 6);
  EXPECT_EQ(dimension_k(2, Theorem::thm3), 4);
  EXPECT_EQ(dimension_k(3, Theorem::thm3), 3);
  EXPECT_EQ(dimension_k(4, Theorem::thm3), 3);
  EXPECT_EQ(dimension_k(5, Theorem::thm3), 2);
}

TEST(ErrorBound, ThreeDimensions) {
  const BoundReport e = thm2_error_bound(3, 1000000, 0, 2);
  EXPECT_NEAR(e.total, 0.753121025025025, 1e-12);
  EXPECT_TRUE(e.valid);
  EXPECT_FALSE(e.vacuous);
  const BoundReport p = thm2_probability(3, 1000000, 2.0, 2);
  EXPECT_NEAR(p.total, -0.942015956548922627, 1e-12);
  EXPECT_TRUE(p.vacuous);
  EXPECT_EQ(p.term("floor(n^(1/k))"), 1000.0);
}

TEST(MinSide, ThreeDimensions) {
  const BoundReport r = thm1_min_side(3, 0.05, 0.1);
  EXPECT_NEAR(r.total / 3.928942639358e14, 1.0, 1e-10);
  EXPECT_EQ(r.term("C"), 901.0);
  EXPECT_NEAR(thm1_min_side(3, 0.1, 0.1).total / 1.708873e14, 1.0, 1e-6);
  EXPECT_THROW(thm1_min_side(2, 0.1, 0.1), PreconditionError);
}

TEST(SubExponential, Threshold) {
  const BoundReport r = thm3_probability(5, 100000000000000000ull, 0, 2);
  EXPECT_NEAR(r.term("n_threshold") / 3.46376980792956e16, 1.0, 1e-10);
  EXPECT_EQ(r.term("floor(n^(1/k))"), 316227766.0);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.total, 1.0);
  EXPECT_FALSE(thm3_probability(5, 1000, 0, 2).valid);
  EXPECT_THROW(thm3_probability(3, 1000, 0, 2), PreconditionError);
}

TEST(Corollaries, Cor59) {
  EXPECT_NEAR(cor59_probability(1e6, 0.1, 2.0), 1.82232123603678588, 1e-12);
}

TEST(Corollaries, Cor511PicksApplicableForm) {
  const BoundReport none = cor511_probability(1e5, 1.0);
  EXPECT_EQ(none.total, 1.0);
  EXPECT_TRUE(none.vacuous);
  const BoundReport one = cor511_probability(1.2e6, 1.0);
  EXPECT_TRUE(one.condition("s>=(K2/kappa)^2"));
  EXPECT_FALSE(one.condition("s>=(6K2/kappa^2)^2"));
  EXPECT_EQ(one.total, one.term("root_form"));
  EXPECT_TRUE(one.vacuous);
  const BoundReport all = cor511_probability(1e10, 0.5);
  EXPECT_TRUE(all.condition("s>=(12K2/kappa^2)^2"));
  EXPECT_EQ(all.total, 0.0);  // every form underflows here
  EXPECT_THROW(cor511_probability(100, 1.5), PreconditionError);
}

TEST(Concentration, BernsteinAndMassart) {
  EXPECT_NEAR(bernstein_bound(25.0, 1.0, 10.0), 0.171237142944788172, 1e-14);
  EXPECT_DOUBLE_EQ(massart_threshold(1.0, 2.0, 2.0, 1.0), 7.0);
  const double s = 4e8, kappa = 0.5, K2 = k_2();
  const double eta = massart_eta(kappa, s);
  EXPECT_NEAR(K2 * std::sqrt(s) + 2.0 * std::sqrt(2.0 * s * eta) + 2.0 * eta, kappa * s, 1e-6 * s);
}
