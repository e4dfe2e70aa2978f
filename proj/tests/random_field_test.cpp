#include <gtest/gtest.h>

#include <cmath>

#include "ids/errors.hpp"
#include "ids/random_field.hpp"

using namespace ids;

TEST(Marginal, InverseCdfDraws) {
  const Marginal u = Marginal::uniform(-1.0, 3.0);
  EXPECT_DOUBLE_EQ(u.draw(0.25), 0.0);
  EXPECT_DOUBLE_EQ(u.mean(), 1.0);
  const Marginal b = Marginal::bernoulli(0.3, 0.0, 2.0);
  EXPECT_EQ(b.draw(0.69), 0.0);
  EXPECT_EQ(b.draw(0.71), 2.0);
  const Marginal d = Marginal::discrete({2.0, -1.0, 0.5}, {0.5, 0.25, 0.25});
  EXPECT_EQ(d.atoms, (std::vector<double>{-1.0, 0.5, 2.0}));
  EXPECT_EQ(d.draw(0.1), -1.0);
  EXPECT_EQ(d.draw(0.4), 0.5);
  EXPECT_EQ(d.draw(0.9), 2.0);
  EXPECT_TRUE(Marginal::bernoulli(1.0).degenerate());
  EXPECT_THROW(Marginal::uniform(1.0, 0.0), PreconditionError);
  EXPECT_THROW(Marginal::bernoulli(1.5), PreconditionError);
}

TEST(Field, DeterministicPerSeedAndSite) {
  FieldSpec spec;
  spec.seed = 11;
  const double v = field_value(spec, Site{3, 4});
  EXPECT_EQ(v, field_value(spec, Site{3, 4}));
  spec.seed = 12;
  EXPECT_NE(v, field_value(spec, Site{3, 4}));
  EXPECT_NE(derive_seed(1, stream::phi, 0), derive_seed(1, stream::verify, 0));
  EXPECT_NE(derive_seed(1, stream::phi, 0), derive_seed(1, stream::phi, 1));
}

TEST(Field, CorrelatedValueIsBallAverage) {
  FieldSpec spec;
  spec.seed = 5;
  spec.correlation_radius = 1;
  const Site x{2, -3};
  double sum = 0.0;
  for (const auto& y : l1_ball(2, 1)) sum += auxiliary_value(spec, x + y);
  EXPECT_DOUBLE_EQ(field_value(spec, x), sum / 5.0);
  EXPECT_EQ(spec.independence_radius(), 2);
}

TEST(Field, SampleAndTranslate) {
  FieldSpec spec;
  spec.seed = 99;
  const Cube c(2, 3, Site{5, 5});
  const PotentialSample w = sample(spec, c);
  EXPECT_EQ(w.size(), 9u);
  EXPECT_EQ(w.value(Site{6, 7}), field_value(spec, Site{6, 7}));
  const PotentialSample t = translate(w, Site{5, 5});
  EXPECT_EQ(t.value(Site{1, 2}), w.value(Site{6, 7}));
  const SiteSet sub{Site{5, 5}, Site{7, 7}};
  EXPECT_EQ(project(w, sub).values(), (std::vector<double>{w.value(Site{5, 5}), w.value(Site{7, 7})}));
  EXPECT_THROW(w.value(Site{0, 0}), PreconditionError);
}

TEST(Field, UniformMeanIsRight) {
  FieldSpec spec;
  spec.seed = 3;
  const PotentialSample w = sample(spec, Cube(1, 100000));
  double mean = 0.0;
  for (double v : w.values()) mean += v;
  mean /= 100000.0;
  EXPECT_NEAR(mean, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST(Field, SupportWindow) {
  FieldSpec spec;
  spec.correlation_radius = 1;
  const SiteSet one{Site{0, 0}};
  EXPECT_EQ(support_window(spec, one).size(), 5u);
}
