#include "ids/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "ids/errors.hpp"

namespace ids {

namespace {

void check_dim(int dim) {
  require(dim >= 1 && dim <= kMaxDim,
          "dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(dim));
}

void check_same_dim(const Site& x, const Site& y) {
  require(x.dim() == y.dim(), "site dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                                  std::to_string(y.dim()));
}

}  // namespace

Site::Site(int dim) : dim_(dim) { check_dim(dim); }

Site::Site(std::initializer_list<Coord> coords) : Site(std::span<const Coord>(coords.begin(), coords.size())) {}

Site::Site(std::span<const Coord> coords) : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Site Site::operator+(const Site& other) const {
  check_same_dim(*this, other);
  Site out(*this);
  for (int i = 0; i < dim_; ++i) out[i] += other[i];
  return out;
}

Site Site::operator-(const Site& other) const {
  check_same_dim(*this, other);
  Site out(*this);
  for (int i = 0; i < dim_; ++i) out[i] -= other[i];
  return out;
}

Site Site::operator-() const {
  Site out(*this);
  for (int i = 0; i < dim_; ++i) out[i] = -out[i];
  return out;
}

std::strong_ordering operator<=>(const Site& a, const Site& b) noexcept {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (int i = 0; i < a.dim_; ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Site Site::unit(int dim, int axis, Coord length) {
  Site e(dim);
  e[axis] = length;
  return e;
}

void normalize(SiteSet& sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
}

bool is_normalized(std::span<const Site> sites) {
  return std::adjacent_find(sites.begin(), sites.end(),
                            [](const Site& a, const Site& b) { return !(a < b); }) == sites.end();
}

bool contains(std::span<const Site> sorted_sites, const Site& x) {
  return std::binary_search(sorted_sites.begin(), sorted_sites.end(), x);
}

Coord l1_distance(const Site& x, const Site& y) {
  check_same_dim(x, y);
  Coord d = 0;
  for (int i = 0; i < x.dim(); ++i) d += std::llabs(x[i] - y[i]);
  return d;
}

Coord set_distance(std::span<const Site> a, std::span<const Site> b) {
  require(!a.empty() && !b.empty(), "set_distance: both sets must be nonempty");
  Coord best = std::numeric_limits<Coord>::max();
  for (const auto& x : a) {
    for (const auto& y : b) {
      best = std::min(best, l1_distance(x, y));
      if (best == 0) return 0;
    }
  }
  return best;
}

SiteSet l1_ball(int dim, Coord radius) {
  check_dim(dim);
  require(radius >= 0, "l1_ball: radius must be nonnegative");
  SiteSet out;
  Site x(dim);
  for (int i = 0; i < dim; ++i) x[i] = -radius;
  // odometer over the box [-radius, radius]^d, keeping points inside the ball
  while (true) {
    Coord norm = 0;
    for (int i = 0; i < dim; ++i) norm += std::llabs(x[i]);
    if (norm <= radius) out.push_back(x);
    int axis = dim - 1;
    while (axis >= 0 && x[axis] == radius) {
      x[axis] = -radius;
      --axis;
    }
    if (axis < 0) break;
    ++x[axis];
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

Cube::Cube(int dim, Coord side) : Cube(dim, side, Site(dim)) {}

Cube::Cube(int dim, Coord side, Site origin) : dim_(dim), side_(side), origin_(origin) {
  check_dim(dim);
  require(side >= 1, "cube side must be positive");
  require(origin.dim() == dim, "cube origin dimension mismatch");
}

std::uint64_t Cube::size() const { return ipow(static_cast<std::uint64_t>(side_), dim_); }

bool Cube::contains(const Site& x) const {
  if (x.dim() != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    const Coord u = x[i] - origin_[i];
    if (u < 0 || u >= side_) return false;
  }
  return true;
}

std::size_t Cube::index_of(const Site& x) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(x[i] - origin_[i]);
  }
  return idx;
}

Site Cube::site_at(std::size_t index) const {
  Site x(origin_);
  for (int i = dim_ - 1; i >= 0; --i) {
    x[i] += static_cast<Coord>(index % static_cast<std::size_t>(side_));
    index /= static_cast<std::size_t>(side_);
  }
  return x;
}

SiteSet Cube::sites() const {
  const auto count = static_cast<std::size_t>(size());
  SiteSet out;
  out.reserve(count);
  Site x(origin_);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(x);
    int axis = dim_ - 1;
    while (axis >= 0 && x[axis] == origin_[axis] + side_ - 1) {
      x[axis] = origin_[axis];
      --axis;
    }
    if (axis >= 0) ++x[axis];
  }
  return out;
}

Cube Cube::translated(const Site& z) const { return Cube(dim_, side_, origin_ + z); }

std::optional<Cube> Cube::interior_cube(Coord r) const {
  require(r >= 0, "interior radius must be nonnegative");
  if (side_ - 2 * r <= 0) return std::nullopt;
  Site o(origin_);
  for (int i = 0; i < dim_; ++i) o[i] += r;
  return Cube(dim_, side_ - 2 * r, o);
}

std::uint64_t Cube::interior_size(Coord r) const {
  require(r >= 0, "interior radius must be nonnegative");
  const Coord s = std::max<Coord>(side_ - 2 * r, 0);
  return ipow(static_cast<std::uint64_t>(s), dim_);
}

Coord Cube::distance_to(const Site& x) const {
  require(x.dim() == dim_, "site dimension mismatch");
  Coord d = 0;
  for (int i = 0; i < dim_; ++i) {
    const Coord lo = origin_[i];
    const Coord hi = origin_[i] + side_ - 1;
    if (x[i] < lo) d += lo - x[i];
    else if (x[i] > hi) d += x[i] - hi;
  }
  return d;
}

SiteSet interior(const Cube& cube, Coord r) {
  auto inner = cube.interior_cube(r);
  return inner ? inner->sites() : SiteSet{};
}

SiteSet interior(std::span<const Site> sorted_sites, Coord r) {
  require(r >= 0, "interior radius must be nonnegative");
  SiteSet out;
  if (sorted_sites.empty()) return out;
  const SiteSet ball = l1_ball(sorted_sites.front().dim(), r);
  for (const auto& x : sorted_sites) {
    bool deep = true;
    for (const auto& y : ball) {
      if (!contains(sorted_sites, x + y)) {
        deep = false;
        break;
      }
    }
    if (deep) out.push_back(x);
  }
  return out;
}

std::uint64_t inner_shell_count(const Cube& cube, Coord r) {
  if (r == 0) return 0;
  return cube.size() - cube.interior_size(r);
}

std::uint64_t outer_shell_count(const Cube& cube, Coord r) {
  require(r >= 0, "boundary radius must be nonnegative");
  if (r == 0) return 0;
  Site lo(cube.origin());
  for (int i = 0; i < cube.dim(); ++i) lo[i] -= r;
  const Cube window(cube.dim(), cube.side() + 2 * r, lo);
  std::uint64_t count = 0;
  const auto n = static_cast<std::size_t>(window.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Coord dist = cube.distance_to(window.site_at(k));
    if (dist > 0 && dist <= r) ++count;
  }
  return count;
}

std::uint64_t boundary_count(const Cube& cube, Coord r) {
  return inner_shell_count(cube, r) + outer_shell_count(cube, r);
}

std::uint64_t b_function(const Cube& cube) { return 8 * (cube.size() - cube.interior_size(1)); }

std::uint64_t b_function(std::span<const Site> sorted_sites) {
  return 8 * (sorted_sites.size() - interior(sorted_sites, 1).size());
}

TilingSet::TilingSet(Coord outer_side, Coord inner_side, int dim)
    : inner_side_(inner_side), outer_(dim, outer_side) {
  require(inner_side >= 1, "tiling: inner side must be positive");
  require(2 * inner_side < outer_side, "tiling: requires 2m < n (m=" + std::to_string(inner_side) +
                                           ", n=" + std::to_string(outer_side) + ")");
  const Coord per_axis = outer_side / inner_side;
  const Cube grid(dim, per_axis);
  const auto count = static_cast<std::size_t>(grid.size());
  offsets_.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Site t = grid.site_at(k);
    for (int i = 0; i < dim; ++i) t[i] *= inner_side;
    offsets_.push_back(t);
  }
}

Cube TilingSet::tile(std::size_t i) const {
  return Cube(outer_.dim(), inner_side_, offsets_.at(i));
}

Cube TilingSet::covered() const {
  return Cube(outer_.dim(), (outer_.side() / inner_side_) * inner_side_);
}

SiteSet TilingSet::remainder() const {
  const Cube cov = covered();
  SiteSet out;
  for (const auto& x : outer_.sites()) {
    if (!cov.contains(x)) out.push_back(x);
  }
  return out;
}

TilingSet tiling(Coord n, Coord m, int dim) { return TilingSet(n, m, dim); }

}  // namespace ids
