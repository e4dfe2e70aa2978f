#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace ids {

inline constexpr int kMaxDim = 8;

using Coord = std::int64_t;

// A point of Z^d. Fixed capacity so that sites are cheap values; ordering is
// lexicographic on the coordinates (dimension first, which only matters when
// comparing sites of different dimension).
class Site {
 public:
  Site() = default;
  explicit Site(int dim);
  Site(std::initializer_list<Coord> coords);
  explicit Site(std::span<const Coord> coords);

  int dim() const noexcept { return dim_; }
  Coord operator[](int i) const noexcept { return c_[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) noexcept { return c_[static_cast<std::size_t>(i)]; }

  Site operator+(const Site& other) const;
  Site operator-(const Site& other) const;
  Site operator-() const;

  friend bool operator==(const Site& a, const Site& b) noexcept {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }
  friend std::strong_ordering operator<=>(const Site& a, const Site& b) noexcept;

  static Site unit(int dim, int axis, Coord length = 1);

 private:
  std::array<Coord, kMaxDim> c_{};
  int dim_ = 0;
};

using SiteSet = std::vector<Site>;

// Sorts lexicographically and removes duplicates.
void normalize(SiteSet& sites);
bool is_normalized(std::span<const Site> sites);
bool contains(std::span<const Site> sorted_sites, const Site& x);

Coord l1_distance(const Site& x, const Site& y);
Coord set_distance(std::span<const Site> a, std::span<const Site> b);

// Sites of Z^d at l1 distance <= radius from the origin, lexicographic.
SiteSet l1_ball(int dim, Coord radius);

// Integer translate of {0 <= x_i < side}.
class Cube {
 public:
  Cube(int dim, Coord side);
  Cube(int dim, Coord side, Site origin);

  int dim() const noexcept { return dim_; }
  Coord side() const noexcept { return side_; }
  const Site& origin() const noexcept { return origin_; }

  std::uint64_t size() const;
  bool contains(const Site& x) const;
  // Lexicographic position of x inside the cube; x must be contained.
  std::size_t index_of(const Site& x) const;
  Site site_at(std::size_t index) const;
  SiteSet sites() const;

  Cube translated(const Site& z) const;

  // The r-interior is again a cube (side n - 2r) unless it is empty.
  std::optional<Cube> interior_cube(Coord r) const;
  std::uint64_t interior_size(Coord r) const;

  // l1 distance from x to the cube (0 inside).
  Coord distance_to(const Site& x) const;

  friend bool operator==(const Cube&, const Cube&) = default;

 private:
  int dim_;
  Coord side_;
  Site origin_;
};

SiteSet interior(const Cube& cube, Coord r);
// Definition-based interior of an arbitrary finite set.
SiteSet interior(std::span<const Site> sorted_sites, Coord r);

// |d^r(cube)|: inner shell plus the sites outside within distance r.
std::uint64_t boundary_count(const Cube& cube, Coord r);
std::uint64_t inner_shell_count(const Cube& cube, Coord r);
std::uint64_t outer_shell_count(const Cube& cube, Coord r);

// b(L) = 8 |L \ L^1|.
std::uint64_t b_function(const Cube& cube);
std::uint64_t b_function(std::span<const Site> sorted_sites);

std::uint64_t ipow(std::uint64_t base, int exponent);

// T_{m,n}: translates t in mZ^d with L_m + t inside the outer cube.
class TilingSet {
 public:
  TilingSet(Coord outer_side, Coord inner_side, int dim);

  Coord inner_side() const noexcept { return inner_side_; }
  const Cube& outer() const noexcept { return outer_; }
  const std::vector<Site>& offsets() const noexcept { return offsets_; }
  std::size_t count() const noexcept { return offsets_.size(); }

  Cube tile(std::size_t i) const;
  // L_{m,n} = L_{floor(n/m) m}
  Cube covered() const;
  // \hat L_{m,n} = L_n \ L_{m,n}
  SiteSet remainder() const;

 private:
  Coord inner_side_;
  Cube outer_;
  std::vector<Site> offsets_;
};

TilingSet tiling(Coord n, Coord m, int dim);

}  // namespace ids
