#include "ids/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ids/errors.hpp"

namespace ids {

namespace {

void check_info(lapack_int info, const char* routine, std::size_t n) {
  if (info < 0) throw std::logic_error(std::string(routine) + ": illegal argument " + std::to_string(-info));
  if (info > 0) {
    throw ConvergenceError(std::string(routine) + " failed to converge on a " + std::to_string(n) + "x" +
                               std::to_string(n) + " matrix",
                           n);
  }
}

}  // namespace

std::vector<double> eigenvalues(const RestrictedOperator& h) {
  const std::size_t n = h.size();
  std::vector<double> w = h.diagonal();
  if (n <= 1) return w;
  const auto ln = static_cast<lapack_int>(n);

  const std::size_t kd = h.bandwidth();
  if (kd <= 1) {
    std::vector<double> e = h.subdiagonal();
    check_info(LAPACKE_dsterf(ln, w.data(), e.data()), "dsterf", n);
    return w;
  }
  if (n > kMaxDenseSize) {
    throw SolverLimitError("matrix of size " + std::to_string(n) + " exceeds the eigensolver limit " +
                               std::to_string(kMaxDenseSize),
                           n);
  }
  if (2 * kd < n) {
    std::vector<double> ab = h.upper_band(kd);
    double z = 0.0;
    check_info(LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'N', 'U', ln, static_cast<lapack_int>(kd), ab.data(),
                              static_cast<lapack_int>(kd + 1), w.data(), &z, 1),
               "dsbevd", n);
  } else {
    std::vector<double> a = h.dense();
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', ln, a.data(), ln, w.data()), "dsyevd", n);
  }
  return w;
}

std::size_t sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
  const std::size_t n = diag.size();
  require(off.size() + 1 == n || (n == 0 && off.empty()), "sturm_count: off-diagonal length mismatch");
  if (n == 0) return 0;
  constexpr double pivmin = std::numeric_limits<double>::min();
  // LDL^T pivots of (x I - T); each negative pivot is an eigenvalue above x
  std::size_t above = 0;
  double p = x - diag[0];
  if (p == 0.0) p = pivmin;
  if (p < 0.0) ++above;
  for (std::size_t i = 1; i < n; ++i) {
    p = (x - diag[i]) - off[i - 1] * off[i - 1] / p;
    if (p == 0.0) p = pivmin;
    if (p < 0.0) ++above;
  }
  return n - above;
}

std::size_t count_below(std::span<const double> sorted_eigenvalues, double x) {
  return static_cast<std::size_t>(std::upper_bound(sorted_eigenvalues.begin(), sorted_eigenvalues.end(), x) -
                                  sorted_eigenvalues.begin());
}

std::size_t count_below(const RestrictedOperator& h, double x) {
  if (h.tridiagonal()) {
    const std::vector<double> e = h.subdiagonal();
    return sturm_count(h.diagonal(), e, x);
  }
  const std::vector<double> w = eigenvalues(h);
  return count_below(w, x);
}

StepFunction evcf(const RestrictedOperator& h) {
  const std::vector<double> w = eigenvalues(h);
  return counting_function(w, 1.0);
}

StepFunction evcf(std::span<const Site> sorted_sites, const PotentialSample& omega) {
  return evcf(assemble(sorted_sites, omega));
}

StepFunction normalized_evcf(std::span<const Site> sorted_sites, const PotentialSample& omega,
                             double normalizer) {
  require(!sorted_sites.empty(), "normalized_evcf: empty evaluation set");
  require(normalizer >= static_cast<double>(sorted_sites.size()),
          "normalized_evcf: normalizer below the evaluation set size");
  const std::vector<double> w = eigenvalues(assemble(sorted_sites, omega));
  return counting_function(w, normalizer);
}

StepFunction normalized_evcf(const Cube& cube, const PotentialSample& omega, double normalizer) {
  const SiteSet sites = cube.sites();
  return normalized_evcf(sites, omega, normalizer);
}

namespace {

// Both functions are constant between consecutive merged breakpoints, so the
// sup is a max over the pieces.
double sup_norm_merge(const StepFunction& f, const StepFunction& g) {
  const auto& fb = f.breakpoints();
  const auto& gb = g.breakpoints();
  double fv = f.base(), gv = g.base();
  double best = std::abs(fv - gv);
  std::size_t i = 0, j = 0;
  while (i < fb.size() || j < gb.size()) {
    const double x = (j >= gb.size() || (i < fb.size() && fb[i] <= gb[j])) ? fb[i] : gb[j];
    if (i < fb.size() && fb[i] == x) fv = f.values()[i++];
    if (j < gb.size() && gb[j] == x) gv = g.values()[j++];
    best = std::max(best, std::abs(fv - gv));
  }
  return best;
}

// g monotone: on a piece [a, b) where f == c, g ranges over [g(a), g(b-)],
// so the two end values bound |c - g|.
double sup_norm_against_monotone(const StepFunction& f, const StepFunction& g) {
  const auto& fb = f.breakpoints();
  if (fb.empty()) return std::max(std::abs(f.base() - g.lower_limit()), std::abs(f.base() - g.upper_limit()));
  double best = std::max(std::abs(f.base() - g.lower_limit()), std::abs(f.base() - g.left_limit(fb.front())));
  for (std::size_t i = 0; i < fb.size(); ++i) {
    const double c = f.values()[i];
    const double hi = i + 1 < fb.size() ? g.left_limit(fb[i + 1]) : g.upper_limit();
    best = std::max({best, std::abs(c - g(fb[i])), std::abs(c - hi)});
  }
  return best;
}

}  // namespace

double sup_norm_distance(const StepFunction& f, const StepFunction& g) {
  if (g.monotone() && g.size() > 8 * (f.size() + 1)) return sup_norm_against_monotone(f, g);
  if (f.monotone() && f.size() > 8 * (g.size() + 1)) return sup_norm_against_monotone(g, f);
  return sup_norm_merge(f, g);
}

StepFunction average(std::span<const StepFunction> fs, std::span<const double> weights) {
  require(!fs.empty(), "average: no inputs");
  require(fs.size() == weights.size(), "average: weight count mismatch");
  double total = 0.0;
  for (double w : weights) {
    require(w >= 0.0, "average: weights must be nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) < 1e-9, "average: weights must sum to 1");

  struct Event {
    double x;
    std::size_t fn;
    double value;
  };
  std::vector<Event> events;
  std::size_t count = 0;
  for (const auto& f : fs) count += f.size();
  events.reserve(count);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t k = 0; k < fs[i].size(); ++k) {
      events.push_back({fs[i].breakpoints()[k], i, weights[i] * fs[i].values()[k]});
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  // fixed-shape summation tree over the inputs
  std::size_t leaves = 1;
  while (leaves < fs.size()) leaves *= 2;
  std::vector<double> tree(2 * leaves, 0.0);
  for (std::size_t i = 0; i < fs.size(); ++i) tree[leaves + i] = weights[i] * fs[i].base();
  for (std::size_t v = leaves - 1; v >= 1; --v) tree[v] = tree[2 * v] + tree[2 * v + 1];

  const double base = tree[1];
  std::vector<double> bps, vals;
  for (std::size_t k = 0; k < events.size();) {
    const double x = events[k].x;
    for (; k < events.size() && events[k].x == x; ++k) {
      std::size_t v = leaves + events[k].fn;
      tree[v] = events[k].value;
      for (v /= 2; v >= 1; v /= 2) tree[v] = tree[2 * v] + tree[2 * v + 1];
    }
    bps.push_back(x);
    vals.push_back(tree[1]);
  }
  return StepFunction(base, std::move(bps), std::move(vals));
}

StepFunction average(std::span<const StepFunction> fs) {
  std::vector<double> w(fs.size(), fs.empty() ? 0.0 : 1.0 / static_cast<double>(fs.size()));
  return average(fs, w);
}

}  // namespace ids
