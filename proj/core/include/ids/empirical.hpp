#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ids/bounds.hpp"
#include "ids/lattice.hpp"
#include "ids/random_field.hpp"
#include "ids/step_function.hpp"

namespace ids {

// Eigenvalues (ascending) of the operator on `sites` for a fresh field.
std::vector<double> block_eigenvalues(const FieldSpec& spec, const Cube& sites);

// (1/|T|) sum_t N(L_m^r + t, omega) / |L_m| over the tiling of L_n.
StepFunction block_average(const PotentialSample& omega, Coord n, Coord m, Coord r);

struct EmpiricalPhi {
  StepFunction function;
  std::size_t sample_count = 0;
  int dim = 1;
  Coord m = 1;
  Coord r = 0;

  // |L_m^r| / |L_m|
  double upper() const;
};

EmpiricalPhi empirical_phi(const FieldSpec& spec, int d, Coord m, Coord r, std::size_t samples,
                           std::uint64_t seed, unsigned workers = 1);

// inf{x : f(x) >= alpha}
double quantile(const StepFunction& f, double alpha);

struct BracketingCover {
  int level = 0;
  // x_0 = -inf, x_1..x_{k-1} quantiles, x_k = +inf, k = 2^{2q}
  std::vector<double> grid;

  std::size_t grid_size() const { return grid.size() - 1; }
  // grid with repeated points collapsed
  std::vector<double> edges() const;
  std::size_t bracket_count() const { return edges().size() - 1; }
};

std::vector<BracketingCover> build_bracketing(const StepFunction& phi, double upper, int q_max);
std::vector<BracketingCover> build_bracketing(const EmpiricalPhi& phi, int q_max);

struct BracketStats {
  int level = 0;
  std::vector<double> edges;
  std::vector<double> size;       // sqrt(mean (N(x_j) - N(x_{j-1}))^2) / |L_m|
  std::vector<double> size_stderr;
  std::vector<double> mean_sq;
  std::vector<bool> atom;         // empirical Phi jumps by more than 2^{-2q} inside the bracket
  bool monotone = true;           // N(x_j) >= N(x_{j-1}) in every sample
  std::size_t samples = 0;
};

std::vector<BracketStats> verify_bracketing(std::span<const BracketingCover> covers, const EmpiricalPhi& phi,
                                            const FieldSpec& spec, std::size_t samples, std::uint64_t seed,
                                            unsigned workers = 1);

struct ConcentrationConfig {
  FieldSpec spec;
  int d = 1;
  Coord m = 1;
  Coord r = 0;
  std::size_t s = 100;
  std::vector<double> kappas{0.05, 0.1, 0.2};
  std::size_t replicas = 200;
  std::uint64_t seed = 1;
  std::uint64_t reference_seed = 0;     // 0: derived from seed
  std::size_t reference_samples = 0;    // 0: 10 * replicas * s
  double M = 2.0;
  unsigned workers = 1;
};

struct ConcentrationRow {
  double kappa;
  std::uint64_t exceedances;
  double freq;
  double wilson_lo;
  double wilson_hi;
  double cor59;
  double cor511;  // NaN when no form of the bound applies
  std::size_t s;
  std::size_t replicas;
};

struct ConcentrationTable {
  std::vector<ConcentrationRow> rows;
  std::vector<double> sup_norms;  // one per replica, in replica order
  double mean_sup = 0.0;
  double reference_band = 0.0;
  std::size_t reference_samples = 0;
};

std::uint64_t resolved_reference_seed(const ConcentrationConfig& cfg);
std::size_t resolved_reference_samples(const ConcentrationConfig& cfg);

EmpiricalPhi concentration_reference(const ConcentrationConfig& cfg);
ConcentrationTable concentration_experiment(const ConcentrationConfig& cfg);
ConcentrationTable concentration_experiment(const ConcentrationConfig& cfg, const EmpiricalPhi& reference);

struct ReferenceEntry {
  Coord n;
  StepFunction mean;
  StepFunction stderr_;
  double gap = std::numeric_limits<double>::quiet_NaN();   // to the previous entry
  double bound = std::numeric_limits<double>::quiet_NaN(); // bound(prev) + bound(n)
  double band = std::numeric_limits<double>::quiet_NaN();  // 3 max stderr of the difference
  bool within = true;
};

std::vector<ReferenceEntry> reference_ids(const FieldSpec& spec, int d, Coord r, std::span<const Coord> ns,
                                          std::size_t samples, std::uint64_t seed, unsigned workers = 1);

struct ConfidenceRegion {
  StepFunction measured;
  StepFunction lower;
  StepFunction upper;
  bool certified = false;
  double required_L = std::numeric_limits<double>::infinity();
};

ConfidenceRegion confidence_region(const PotentialSample& omega, Coord n, int d, Coord r, double beta,
                                   double alpha);

}  // namespace ids
