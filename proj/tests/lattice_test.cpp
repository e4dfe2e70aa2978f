#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ids/errors.hpp"
#include "ids/lattice.hpp"

using namespace ids;

TEST(Site, ArithmeticAndOrder) {
  const Site a{1, 2}, b{0, 5};
  EXPECT_EQ(a + b, (Site{1, 7}));
  EXPECT_EQ(a - b, (Site{1, -3}));
  EXPECT_EQ(-a, (Site{-1, -2}));
  EXPECT_LT(b, a);
  EXPECT_EQ(Site::unit(3, 1, 4), (Site{0, 4, 0}));
  EXPECT_THROW((void)(Site{1} + Site{1, 2}), PreconditionError);
}

TEST(Site, Distances) {
  EXPECT_EQ(l1_distance(Site{0, 0}, Site{3, -4}), 7);
  const SiteSet a{Site{0}, Site{1}}, b{Site{5}, Site{9}};
  EXPECT_EQ(set_distance(a, b), 4);
}

TEST(Site, NormalizeSortsAndDeduplicates) {
  SiteSet s{Site{2}, Site{0}, Site{2}, Site{-1}};
  normalize(s);
  EXPECT_EQ(s, (SiteSet{Site{-1}, Site{0}, Site{2}}));
  EXPECT_TRUE(is_normalized(s));
  EXPECT_TRUE(contains(s, Site{0}));
  EXPECT_FALSE(contains(s, Site{1}));
}

TEST(L1Ball, SizesMatchCentredFigurateNumbers) {
  EXPECT_EQ(l1_ball(1, 3).size(), 7u);
  EXPECT_EQ(l1_ball(2, 2).size(), 13u);
  EXPECT_EQ(l1_ball(3, 1).size(), 7u);
  EXPECT_EQ(l1_ball(3, 2).size(), 25u);
  EXPECT_TRUE(is_normalized(l1_ball(2, 3)));
}

TEST(Cube, IndexRoundTrip) {
  const Cube c(3, 4, Site{-1, 2, 5});
  EXPECT_EQ(c.size(), 64u);
  const SiteSet all = c.sites();
  ASSERT_EQ(all.size(), 64u);
  EXPECT_TRUE(is_normalized(all));
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(c.site_at(i), all[i]);
    EXPECT_EQ(c.index_of(all[i]), i);
  }
  EXPECT_FALSE(c.contains(Site{3, 2, 5}));
  EXPECT_EQ(c.distance_to(Site{-3, 2, 9}), 3);
}

TEST(Cube, InteriorIsCubeOfSideNMinus2R) {
  const Cube c(2, 7);
  EXPECT_EQ(interior(c, 2).size(), 9u);
  EXPECT_EQ(c.interior_size(3), 1u);
  EXPECT_EQ(c.interior_size(4), 0u);
  EXPECT_FALSE(c.interior_cube(4).has_value());
  const SiteSet all = c.sites();
  EXPECT_EQ(interior(std::span<const Site>(all), 2), interior(c, 2));
}

TEST(Boundary, SmallExamples) {
  // {0,1,2} with r=1: sites 0, 2 inside and -1, 3 outside
  EXPECT_EQ(boundary_count(Cube(1, 3), 1), 4u);
  EXPECT_EQ(boundary_count(Cube(1, 1), 1), 3u);
  EXPECT_EQ(boundary_count(Cube(2, 5), 0), 0u);
  // distance 2 outside: 4 x 5 straight plus 4 diagonal corners
  EXPECT_EQ(inner_shell_count(Cube(2, 5), 2), 24u);
  EXPECT_EQ(outer_shell_count(Cube(2, 5), 1), 20u);
  EXPECT_EQ(outer_shell_count(Cube(2, 5), 2), 44u);
}

TEST(Boundary, BFunction) {
  EXPECT_EQ(b_function(Cube(1, 3)), 16u);
  EXPECT_EQ(b_function(Cube(2, 1)), 8u);
  EXPECT_EQ(b_function(Cube(2, 10)), 8u * 36u);
  EXPECT_EQ(b_function(Cube(3, 4, Site{7, -2, 1})), b_function(Cube(3, 4)));
}

TEST(Tiling, CountsAndRemainder) {
  const TilingSet t = tiling(20, 6, 2);
  EXPECT_EQ(t.count(), 9u);
  EXPECT_EQ(t.covered(), Cube(2, 18));
  EXPECT_EQ(t.remainder().size(), 400u - 324u);
  std::set<Site> seen;
  for (std::size_t i = 0; i < t.count(); ++i) {
    for (const auto& x : t.tile(i).sites()) EXPECT_TRUE(seen.insert(x).second);
  }
  EXPECT_THROW(tiling(10, 5, 1), PreconditionError);
}

TEST(Ipow, Exact) {
  EXPECT_EQ(ipow(10, 0), 1u);
  EXPECT_EQ(ipow(3, 5), 243u);
  EXPECT_EQ(ipow(20, 3), 8000u);
}
