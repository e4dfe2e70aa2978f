#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ids/lattice.hpp"

namespace ids {

enum class MarginalKind { uniform, bernoulli, discrete };

// Single-site distribution with bounded support. Draws go through the inverse
// CDF so one uniform variate per site is enough.
struct Marginal {
  MarginalKind kind = MarginalKind::uniform;
  double a = 0.0, b = 1.0;            // uniform[a, b]
  double p = 0.5, v0 = 0.0, v1 = 1.0;  // P(v1) = p
  std::vector<double> atoms;           // discrete, sorted
  std::vector<double> weights;         // discrete, same length, sum 1

  static Marginal uniform(double a, double b);
  static Marginal bernoulli(double p, double v0 = 0.0, double v1 = 1.0);
  static Marginal discrete(std::vector<double> atoms, std::vector<double> weights = {});

  double draw(double u) const;
  double lower() const;
  double upper() const;
  double mean() const;
  bool degenerate() const;
  std::string tag() const;

  friend bool operator==(const Marginal&, const Marginal&) = default;
};

struct FieldSpec {
  Marginal marginal;
  Coord correlation_radius = 0;  // rho
  std::uint64_t seed = 0;

  Coord independence_radius() const noexcept { return 2 * correlation_radius; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

// Stream tags for derive_seed.
namespace stream {
inline constexpr std::uint64_t phi = 0x7068;
inline constexpr std::uint64_t verify = 0x7665;
inline constexpr std::uint64_t reference = 0x7265;
inline constexpr std::uint64_t replica = 0x7270;
inline constexpr std::uint64_t pilot = 0x706c;
inline constexpr std::uint64_t sample = 0x7361;
}  // namespace stream

// Uniform in [0,1), a pure function of (seed, x).
double site_uniform(std::uint64_t seed, const Site& x) noexcept;

// The auxiliary i.i.d. variable eta_x, and the field value at x
// (the mean of eta over the l1 ball of radius rho around x).
double auxiliary_value(const FieldSpec& spec, const Site& x);
double field_value(const FieldSpec& spec, const Site& x);

class PotentialSample {
 public:
  PotentialSample() = default;
  PotentialSample(FieldSpec spec, SiteSet sorted_sites, std::vector<double> values);

  const FieldSpec& spec() const noexcept { return spec_; }
  const SiteSet& sites() const noexcept { return sites_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return sites_.size(); }
  bool empty() const noexcept { return sites_.empty(); }

  bool covers(const Site& x) const;
  double value(const Site& x) const;
  // Values on a sorted subset, in order.
  std::vector<double> values_on(std::span<const Site> sorted_subset) const;

 private:
  FieldSpec spec_;
  SiteSet sites_;
  std::vector<double> values_;
};

PotentialSample sample(const FieldSpec& spec, SiteSet sites);
PotentialSample sample(const FieldSpec& spec, const Cube& cube);

// (gamma_z omega)_y = omega_{y+z}
PotentialSample translate(const PotentialSample& omega, const Site& z);
PotentialSample project(const PotentialSample& omega, std::span<const Site> sorted_subset);

// Sites whose auxiliary variables enter the values on `sites`.
SiteSet support_window(const FieldSpec& spec, std::span<const Site> sites);

}  // namespace ids
