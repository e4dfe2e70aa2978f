#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ids/empirical.hpp"
#include "ids/errors.hpp"
#include "ids/operator.hpp"
#include "ids/spectra.hpp"

using namespace ids;

namespace {

FieldSpec uniform_spec(std::uint64_t seed = 1) {
  FieldSpec spec;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST(BlockAverage, EqualsAverageOfNormalizedBlocks) {
  const FieldSpec spec = uniform_spec(6);
  const PotentialSample w = sample(spec, Cube(2, 23));
  const StepFunction pooled = block_average(w, 23, 5, 1);
  const TilingSet t = tiling(23, 5, 2);
  std::vector<StepFunction> parts;
  for (std::size_t i = 0; i < t.count(); ++i) {
    const Cube inner = *t.tile(i).interior_cube(1);
    const SiteSet sites = inner.sites();
    parts.push_back(normalized_evcf(std::span<const Site>(sites), w, 25.0));
  }
  EXPECT_LT(sup_norm_distance(pooled, average(parts)), 1e-12);
  EXPECT_DOUBLE_EQ(pooled.upper_limit(), 9.0 / 25.0);
}

TEST(EmpiricalPhi, WorkerInvariant) {
  const FieldSpec spec = uniform_spec();
  const EmpiricalPhi a = empirical_phi(spec, 2, 3, 0, 700, 42, 1);
  const EmpiricalPhi b = empirical_phi(spec, 2, 3, 0, 700, 42, 3);
  EXPECT_EQ(a.function, b.function);
  EXPECT_DOUBLE_EQ(a.function.upper_limit(), 1.0);
  EXPECT_DOUBLE_EQ(empirical_phi(spec, 1, 5, 1, 10, 1).upper(), 3.0 / 5.0);
}

TEST(Quantile, GeneralizedInverse) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const StepFunction f = counting_function(v, 4.0);
  EXPECT_EQ(quantile(f, 0.25), 1.0);
  EXPECT_EQ(quantile(f, 0.26), 2.0);
  EXPECT_EQ(quantile(f, 1.0), 4.0);
  EXPECT_THROW(quantile(f, 1.5), PreconditionError);
}

TEST(Bracketing, NestedGridsAndCounts) {
  const EmpiricalPhi phi = empirical_phi(uniform_spec(), 1, 1, 0, 4000, 9);
  const auto covers = build_bracketing(phi, 4);
  ASSERT_EQ(covers.size(), 4u);
  for (std::size_t l = 0; l < covers.size(); ++l) {
    const std::size_t k = std::size_t{1} << (2 * covers[l].level);
    EXPECT_EQ(covers[l].grid_size(), k);
    EXPECT_LE(covers[l].bracket_count(), k);
    if (l + 1 < covers.size()) {
      for (std::size_t j = 0; j < covers[l].grid.size(); ++j) EXPECT_EQ(covers[l].grid[j], covers[l + 1].grid[4 * j]);
    }
  }
  const auto stats = verify_bracketing(covers, phi, uniform_spec(), 2000, 5, 2);
  for (const auto& s : stats) EXPECT_TRUE(s.monotone);
}

TEST(Bracketing, AtomsCollapse) {
  FieldSpec spec;
  spec.marginal = Marginal::bernoulli(0.5, 0.0, 1.0);
  const EmpiricalPhi phi = empirical_phi(spec, 1, 1, 0, 400, 3);
  const auto covers = build_bracketing(phi, 2);
  // two atoms, so at most three distinct brackets survive
  EXPECT_LE(covers.back().bracket_count(), 3u);
  const auto stats = verify_bracketing(covers, phi, spec, 500, 4);
  bool any_atom = false;
  for (const auto& s : stats) {
    for (bool a : s.atom) any_atom = any_atom || a;
  }
  EXPECT_TRUE(any_atom);
}

TEST(Concentration, DeterministicAndNested) {
  ConcentrationConfig cfg;
  cfg.m = 3;
  cfg.r = 1;
  cfg.s = 50;
  cfg.replicas = 120;
  cfg.kappas = {0.01, 0.05, 0.1, 0.3};
  cfg.seed = 17;
  const ConcentrationTable a = concentration_experiment(cfg);
  cfg.workers = 4;
  const ConcentrationTable b = concentration_experiment(cfg);
  EXPECT_EQ(a.sup_norms, b.sup_norms);
  ASSERT_EQ(a.rows.size(), 4u);
  for (std::size_t i = 1; i < a.rows.size(); ++i) EXPECT_LE(a.rows[i].freq, a.rows[i - 1].freq);
  EXPECT_EQ(resolved_reference_samples(cfg), 10u * 120u * 50u);
  EXPECT_TRUE(std::isnan(a.rows[0].cor511));
}

TEST(Concentration, RejectsBadConfigs) {
  ConcentrationConfig cfg;
  cfg.m = 3;
  cfg.r = 1;
  cfg.reference_seed = cfg.seed;
  EXPECT_THROW(concentration_experiment(cfg), PreconditionError);
  cfg.reference_seed = 0;
  cfg.spec.correlation_radius = 1;  // needs r >= 2
  EXPECT_THROW(concentration_experiment(cfg), PreconditionError);
}

TEST(Reference, DegenerateFieldIsFreeLaplacian) {
  FieldSpec spec;
  spec.marginal = Marginal::discrete({0.0});
  const std::vector<Coord> ns{10, 20};
  const auto entries = reference_ids(spec, 1, 0, ns, 5, 1);
  ASSERT_EQ(entries.size(), 2u);
  std::vector<double> ev;
  for (int k = 1; k <= 20; ++k) ev.push_back(2.0 - 2.0 * std::cos(k * std::numbers::pi / 21.0));
  const StepFunction& mean = entries[1].mean;
  ASSERT_EQ(mean.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(mean.breakpoints()[i], ev[i], 1e-12);
    EXPECT_DOUBLE_EQ(mean.values()[i], static_cast<double>(i + 1) / 20.0);
  }
  EXPECT_EQ(entries[1].stderr_.upper_limit(), 0.0);
  EXPECT_TRUE(std::isnan(entries[0].gap));
  EXPECT_DOUBLE_EQ(entries[1].bound, expectation_convergence_bound(1, 10, 0) + expectation_convergence_bound(1, 20, 0));
}

TEST(Region, BandAndCertification) {
  const Cube c(3, 5);
  const PotentialSample w = sample(uniform_spec(), c);
  const ConfidenceRegion wide = confidence_region(w, 5, 3, 0, 1.0, 0.1);
  for (double v : wide.lower.values()) EXPECT_EQ(v, 0.0);
  for (double v : wide.upper.values()) EXPECT_EQ(v, 1.0);
  const ConfidenceRegion r = confidence_region(w, 5, 3, 0, 0.1, 0.1);
  EXPECT_FALSE(r.certified);
  EXPECT_NEAR(r.required_L / 1.708873e14, 1.0, 1e-6);
  for (std::size_t i = 0; i < r.measured.size(); ++i) {
    EXPECT_LE(r.lower.values()[i], r.measured.values()[i]);
    EXPECT_GE(r.upper.values()[i], r.measured.values()[i]);
  }
}
