#include "ids/random_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ids/errors.hpp"

namespace ids {

Marginal Marginal::uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a <= b, "uniform marginal needs finite a <= b");
  Marginal m;
  m.kind = MarginalKind::uniform;
  m.a = a;
  m.b = b;
  return m;
}

Marginal Marginal::bernoulli(double p, double v0, double v1) {
  require(p >= 0.0 && p <= 1.0, "bernoulli marginal needs p in [0,1]");
  require(std::isfinite(v0) && std::isfinite(v1) && v0 < v1, "bernoulli marginal needs v0 < v1");
  Marginal m;
  m.kind = MarginalKind::bernoulli;
  m.p = p;
  m.v0 = v0;
  m.v1 = v1;
  return m;
}

Marginal Marginal::discrete(std::vector<double> atoms, std::vector<double> weights) {
  require(!atoms.empty(), "discrete marginal needs at least one atom");
  if (weights.empty()) weights.assign(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  require(weights.size() == atoms.size(), "discrete marginal: atoms/weights length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    require(std::isfinite(atoms[i]), "discrete marginal: atoms must be finite");
    require(weights[i] >= 0.0, "discrete marginal: weights must be nonnegative");
    total += weights[i];
  }
  require(std::abs(total - 1.0) < 1e-12, "discrete marginal: weights must sum to 1");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return atoms[i] < atoms[j]; });
  Marginal m;
  m.kind = MarginalKind::discrete;
  for (auto i : order) {
    m.atoms.push_back(atoms[i]);
    m.weights.push_back(weights[i]);
  }
  return m;
}

double Marginal::draw(double u) const {
  switch (kind) {
    case MarginalKind::uniform:
      return a + (b - a) * u;
    case MarginalKind::bernoulli:
      return u < 1.0 - p ? v0 : v1;
    case MarginalKind::discrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        acc += weights[i];
        if (u < acc) return atoms[i];
      }
      return atoms.back();
    }
  }
  throw PreconditionError("unsupported marginal");
}

double Marginal::lower() const {
  switch (kind) {
    case MarginalKind::uniform: return a;
    case MarginalKind::bernoulli: return p == 1.0 ? v1 : v0;
    case MarginalKind::discrete: return atoms.front();
  }
  return 0.0;
}

double Marginal::upper() const {
  switch (kind) {
    case MarginalKind::uniform: return b;
    case MarginalKind::bernoulli: return p == 0.0 ? v0 : v1;
    case MarginalKind::discrete: return atoms.back();
  }
  return 0.0;
}

double Marginal::mean() const {
  switch (kind) {
    case MarginalKind::uniform: return 0.5 * (a + b);
    case MarginalKind::bernoulli: return (1.0 - p) * v0 + p * v1;
    case MarginalKind::discrete:
      return std::inner_product(atoms.begin(), atoms.end(), weights.begin(), 0.0);
  }
  return 0.0;
}

bool Marginal::degenerate() const {
  switch (kind) {
    case MarginalKind::uniform: return a == b;
    case MarginalKind::bernoulli: return p == 0.0 || p == 1.0;
    case MarginalKind::discrete:
      return std::count_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; }) <= 1;
  }
  return false;
}

std::string Marginal::tag() const {
  switch (kind) {
    case MarginalKind::uniform: return "uniform";
    case MarginalKind::bernoulli: return "bernoulli";
    case MarginalKind::discrete: return "discrete";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag, std::uint64_t index) noexcept {
  return mix64(mix64(mix64(master) ^ stream_tag) + index);
}

double site_uniform(std::uint64_t seed, const Site& x) noexcept {
  std::uint64_t h = mix64(seed);
  for (int i = 0; i < x.dim(); ++i) h = mix64(h ^ static_cast<std::uint64_t>(x[i]));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double auxiliary_value(const FieldSpec& spec, const Site& x) {
  return spec.marginal.draw(site_uniform(spec.seed, x));
}

double field_value(const FieldSpec& spec, const Site& x) {
  if (spec.correlation_radius == 0) return auxiliary_value(spec, x);
  const SiteSet ball = l1_ball(x.dim(), spec.correlation_radius);
  double sum = 0.0;
  for (const auto& y : ball) sum += auxiliary_value(spec, x + y);
  return sum / static_cast<double>(ball.size());
}

PotentialSample::PotentialSample(FieldSpec spec, SiteSet sorted_sites, std::vector<double> values)
    : spec_(std::move(spec)), sites_(std::move(sorted_sites)), values_(std::move(values)) {
  require(sites_.size() == values_.size(), "potential sample: sites/values length mismatch");
  require(is_normalized(sites_), "potential sample: sites must be sorted and distinct");
}

bool PotentialSample::covers(const Site& x) const { return contains(sites_, x); }

double PotentialSample::value(const Site& x) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), x);
  require(it != sites_.end() && *it == x, "potential sample does not cover the requested site");
  return values_[static_cast<std::size_t>(it - sites_.begin())];
}

std::vector<double> PotentialSample::values_on(std::span<const Site> sorted_subset) const {
  std::vector<double> out;
  out.reserve(sorted_subset.size());
  auto it = sites_.begin();
  for (const auto& x : sorted_subset) {
    it = std::lower_bound(it, sites_.end(), x);
    require(it != sites_.end() && *it == x, "potential sample does not cover the requested set");
    out.push_back(values_[static_cast<std::size_t>(it - sites_.begin())]);
  }
  return out;
}

PotentialSample sample(const FieldSpec& spec, SiteSet sites) {
  normalize(sites);
  std::vector<double> values;
  values.reserve(sites.size());
  if (spec.correlation_radius == 0) {
    for (const auto& x : sites) values.push_back(auxiliary_value(spec, x));
  } else if (!sites.empty()) {
    const SiteSet ball = l1_ball(sites.front().dim(), spec.correlation_radius);
    for (const auto& x : sites) {
      double sum = 0.0;
      for (const auto& y : ball) sum += auxiliary_value(spec, x + y);
      values.push_back(sum / static_cast<double>(ball.size()));
    }
  }
  return PotentialSample(spec, std::move(sites), std::move(values));
}

PotentialSample sample(const FieldSpec& spec, const Cube& cube) { return sample(spec, cube.sites()); }

PotentialSample translate(const PotentialSample& omega, const Site& z) {
  SiteSet shifted;
  shifted.reserve(omega.size());
  for (const auto& x : omega.sites()) shifted.push_back(x - z);
  // translation preserves lexicographic order
  return PotentialSample(omega.spec(), std::move(shifted), omega.values());
}

PotentialSample project(const PotentialSample& omega, std::span<const Site> sorted_subset) {
  require(is_normalized(sorted_subset), "project: subset must be sorted and distinct");
  return PotentialSample(omega.spec(), SiteSet(sorted_subset.begin(), sorted_subset.end()),
                         omega.values_on(sorted_subset));
}

SiteSet support_window(const FieldSpec& spec, std::span<const Site> sites) {
  SiteSet out;
  if (sites.empty()) return out;
  const SiteSet ball = l1_ball(sites.front().dim(), spec.correlation_radius);
  out.reserve(sites.size() * ball.size());
  for (const auto& x : sites) {
    for (const auto& y : ball) out.push_back(x + y);
  }
  normalize(out);
  return out;
}

}  // namespace ids
