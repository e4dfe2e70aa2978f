#include "ids/validation.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "ids/bounds.hpp"
#include "ids/empirical.hpp"
#include "ids/errors.hpp"
#include "ids/operator.hpp"
#include "ids/orlicz.hpp"
#include "ids/parallel.hpp"
#include "ids/spectra.hpp"
#include "ids/statistics.hpp"

namespace ids {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void SuiteReport::add(std::string check_name, bool ok, std::string detail) {
  checks.push_back({std::move(check_name), ok, std::move(detail)});
}

namespace {

template <class... Args>
std::string fmt(Args&&... args) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << args);
  return os.str();
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream_tag, std::uint64_t index) {
  return std::mt19937_64(derive_seed(seed, stream_tag, index));
}

Coord uniform_int(std::mt19937_64& g, Coord lo, Coord hi) {
  return std::uniform_int_distribution<Coord>(lo, hi)(g);
}

FieldSpec random_field_spec(std::mt19937_64& g) {
  FieldSpec spec;
  spec.seed = g();
  switch (uniform_int(g, 0, 4)) {
    case 0: spec.marginal = Marginal::uniform(0.0, 1.0); break;
    case 1: spec.marginal = Marginal::uniform(-1.0, 2.0); break;
    case 2: spec.marginal = Marginal::bernoulli(0.3, 0.0, 2.0); break;
    case 3: spec.marginal = Marginal::discrete({-1.0, 0.0, 1.5}, {0.25, 0.5, 0.25}); break;
    default:
      spec.marginal = Marginal::uniform(0.0, 1.0);
      spec.correlation_radius = 1;
  }
  return spec;
}

Site random_site(std::mt19937_64& g, int d, Coord lo, Coord hi) {
  Site x(d);
  for (int i = 0; i < d; ++i) x[i] = uniform_int(g, lo, hi);
  return x;
}

// ---------------------------------------------------------------- geometry

Coord brute_distance_to_complement(const Cube& c, const Site& x) {
  for (Coord k = 1;; ++k) {
    for (const auto& y : l1_ball(x.dim(), k)) {
      if (!c.contains(x + y)) return k;
    }
  }
}

std::uint64_t brute_boundary_count(const Cube& c, Coord r) {
  Site lo(c.origin());
  for (int i = 0; i < c.dim(); ++i) lo[i] -= r + 1;
  const Cube window(c.dim(), c.side() + 2 * r + 2, lo);
  const SiteSet inside = c.sites();
  std::uint64_t count = 0;
  for (const auto& x : window.sites()) {
    if (c.contains(x)) {
      if (brute_distance_to_complement(c, x) <= r) ++count;
    } else {
      const SiteSet single{x};
      if (set_distance(single, inside) <= r) ++count;
    }
  }
  return count;
}

void geometry_suite(SuiteReport& rep, const ValidationOptions&) {
  {
    bool ok = true;
    std::string where;
    for (int d = 1; d <= 3 && ok; ++d) {
      for (Coord n = 1; n <= 12 && ok; ++n) {
        const Cube c(d, n, Site::unit(d, 0, 3));
        const SiteSet all = c.sites();
        for (Coord r = 0; r <= n / 2 + 1 && ok; ++r) {
          const auto enumerated = interior(std::span<const Site>(all), r).size();
          const auto closed = ipow(static_cast<std::uint64_t>(std::max<Coord>(n - 2 * r, 0)), d);
          if (enumerated != closed || interior(c, r).size() != closed) {
            ok = false;
            where = fmt("d=", d, " n=", n, " r=", r);
          }
        }
      }
    }
    rep.add("interior closed form matches enumeration (d<=3, n<=12)", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    for (int d = 1; d <= 2 && ok; ++d) {
      for (Coord n = 1; n <= 6 && ok; ++n) {
        for (Coord r = 0; r <= 3 && ok; ++r) {
          const Cube c(d, n);
          if (boundary_count(c, r) != brute_boundary_count(c, r)) {
            ok = false;
            where = fmt("d=", d, " n=", n, " r=", r);
          }
        }
      }
    }
    ok = ok && boundary_count(Cube(1, 3), 1) == 4 && boundary_count(Cube(1, 1), 1) == 3 &&
         boundary_count(Cube(2, 5), 0) == 0;
    rep.add("boundary count matches the definition", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    const std::vector<std::array<Coord, 3>> cases{{20, 6, 2}, {8, 2, 3}, {7, 3, 2}, {9, 4, 1}, {13, 3, 3}, {11, 5, 2}};
    for (const auto& [n, m, d] : cases) {
      const TilingSet t = tiling(n, m, static_cast<int>(d));
      bool here = t.count() == ipow(static_cast<std::uint64_t>(n / m), static_cast<int>(d));
      SiteSet seen;
      for (std::size_t i = 0; i < t.count(); ++i) {
        const Cube tile = t.tile(i);
        here = here && tile.size() == ipow(static_cast<std::uint64_t>(m), static_cast<int>(d));
        for (const auto& x : tile.sites()) {
          here = here && t.outer().contains(x);
          seen.push_back(x);
        }
      }
      const std::size_t before = seen.size();
      normalize(seen);
      here = here && seen.size() == before && seen == t.covered().sites();
      SiteSet parts = seen;
      for (const auto& x : t.remainder()) parts.push_back(x);
      const std::size_t total = parts.size();
      normalize(parts);
      here = here && parts.size() == total && parts == t.outer().sites();
      if (!here) {
        ok = false;
        where = fmt("n=", n, " m=", m, " d=", d);
      }
    }
    rep.add("tiles are disjoint m-cubes partitioning the covered cube", ok, where);
  }
  {
    bool ok = true;
    std::string where;
    for (int d = 1; d <= 3; ++d) {
      for (Coord r = 1; r <= 2; ++r) {
        double prev = std::numeric_limits<double>::infinity();
        for (Coord n = 2 * r + 1; n <= (d == 3 ? 20 : 40); ++n) {
          const Cube c(d, n);
          const double ratio = static_cast<double>(boundary_count(c, r)) / static_cast<double>(c.size());
          if (!(ratio < prev)) {
            ok = false;
            where = fmt("d=", d, " r=", r, " n=", n);
          }
          prev = ratio;
        }
      }
    }
    const double r1 = static_cast<double>(boundary_count(Cube(1, 1000), 1)) / 1000.0;
    const double r2 = static_cast<double>(boundary_count(Cube(2, 900), 1)) / (900.0 * 900.0);
    ok = ok && r1 < 0.01 && r2 < 0.01;
    rep.add("boundary ratio decreases and drops below 0.01", ok, fmt(where, " d1(n=1000)=", r1, " d2(n=900)=", r2));
  }
  {
    bool ok = true;
    std::mt19937_64 g(17);
    for (int trial = 0; trial < 200; ++trial) {
      const int d = static_cast<int>(uniform_int(g, 1, 3));
      const Cube c(d, uniform_int(g, 1, 7), random_site(g, d, -5, 5));
      const Site z = random_site(g, d, -9, 9);
      ok = ok && b_function(c) == b_function(c.translated(z)) && b_function(c) <= 8 * c.size();
      const SiteSet s = c.sites();
      ok = ok && b_function(std::span<const Site>(s)) == b_function(c);
    }
    ok = ok && b_function(Cube(1, 3)) == 16 && b_function(Cube(2, 1)) == 8 && b_function(Cube(2, 10)) == 288;
    rep.add("b is translation invariant and at most 8|L|", ok);
  }
}

// -------------------------------------------------------------- properties

SiteSet random_disjoint_cubes(std::mt19937_64& g, int d, std::vector<Cube>& cubes) {
  const auto k = static_cast<std::size_t>(uniform_int(g, 2, 4));
  for (int attempt = 0; attempt < 200 && cubes.size() < k; ++attempt) {
    const Cube c(d, uniform_int(g, 1, d == 3 ? 3 : 5), random_site(g, d, 0, d == 3 ? 5 : 8));
    bool clash = false;
    for (const auto& o : cubes) {
      bool overlap = true;
      for (int i = 0; i < d; ++i) {
        overlap = overlap && c.origin()[i] < o.origin()[i] + o.side() && o.origin()[i] < c.origin()[i] + c.side();
      }
      clash = clash || overlap;
    }
    if (!clash) cubes.push_back(c);
  }
  SiteSet all;
  for (const auto& c : cubes) {
    const SiteSet s = c.sites();
    all.insert(all.end(), s.begin(), s.end());
  }
  normalize(all);
  return all;
}

struct PropertyTally {
  std::size_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0, gersh = 0, assemble = 0, cov = 0;
  double worst_a6_excess = -std::numeric_limits<double>::infinity();
  double worst_a3_slack = std::numeric_limits<double>::infinity();
};

PropertyTally property_instance(const ValidationOptions& opts, std::size_t i) {
  PropertyTally t;
  auto g = rng_for(opts.seed, stream::sample, i);
  const int d = static_cast<int>(uniform_int(g, 1, 3));
  const Coord side = uniform_int(g, 1, 6);
  const Cube cube(d, side, random_site(g, d, -5, 5));
  const FieldSpec spec = random_field_spec(g);
  const SiteSet sites = cube.sites();
  const Site z = random_site(g, d, -7, 7);

  // (A1) translation invariance, exact
  const Cube shifted = cube.translated(z);
  const PotentialSample omega_big = sample(spec, shifted);
  const PotentialSample omega_back = translate(omega_big, z);
  const SiteSet shifted_sites = shifted.sites();
  const StepFunction n1 = evcf(std::span<const Site>(shifted_sites), omega_big);
  const StepFunction n2 = evcf(std::span<const Site>(sites), omega_back);
  if (sup_norm_distance(n1, n2) != 0.0) ++t.a1;

  // translation covariance of the assembled matrices
  {
    const RestrictedOperator h1 = assemble(shifted, omega_big);
    const RestrictedOperator h2 = assemble(cube, omega_back);
    if (h1.diagonal() != h2.diagonal() || h1.cols() != h2.cols() || h1.row_start() != h2.row_start()) ++t.cov;
  }

  // (A2) locality: change the field outside the cube
  const PotentialSample omega = sample(spec, cube);
  {
    FieldSpec other = spec;
    other.seed = spec.seed ^ 0x5555;
    SiteSet wider = sites;
    for (const auto& x : sites) {
      for (int a = 0; a < d; ++a) {
        wider.push_back(x + Site::unit(d, a));
        wider.push_back(x - Site::unit(d, a));
      }
    }
    normalize(wider);
    PotentialSample noise = sample(other, wider);
    std::vector<double> vals = noise.values();
    for (std::size_t k = 0; k < noise.sites().size(); ++k) {
      if (cube.contains(noise.sites()[k])) vals[k] = omega.value(noise.sites()[k]);
    }
    const PotentialSample mixed(spec, noise.sites(), std::move(vals));
    const RestrictedOperator ha = assemble(cube, omega);
    const RestrictedOperator hb = assemble(cube, mixed);
    if (ha.diagonal() != hb.diagonal() || ha.cols() != hb.cols()) ++t.a2;
  }

  // operator shape: symmetric hopping, at most 2d neighbours, diagonal 2d + omega
  {
    const RestrictedOperator h = assemble(cube, omega);
    bool ok = true;
    std::vector<int> degree(h.size(), 0);
    for (std::size_t r = 0; r < h.size(); ++r) {
      ok = ok && h.diagonal()[r] == 2.0 * d + omega.values()[r];
      for (std::size_t k = h.row_start()[r]; k < h.row_start()[r + 1]; ++k) {
        const std::size_t c = h.cols()[k];
        ok = ok && l1_distance(h.sites()[r], h.sites()[c]) == 1;
        ++degree[r];
        ++degree[c];
      }
    }
    for (int deg : degree) ok = ok && deg <= 2 * d;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < sites.size(); ++a) {
      for (std::size_t b = a + 1; b < sites.size(); ++b) pairs += l1_distance(sites[a], sites[b]) == 1;
    }
    ok = ok && pairs == h.edge_count();
    if (!ok) ++t.assemble;

    // Gershgorin range and monotone evcf
    const auto w = eigenvalues(h);
    const double lo = *std::min_element(omega.values().begin(), omega.values().end());
    const double hi = *std::max_element(omega.values().begin(), omega.values().end()) + 4.0 * d;
    const double tol = 1e-12 * (hi + 1.0);
    for (double v : w) {
      if (v < lo - tol || v > hi + tol) {
        ++t.gersh;
        break;
      }
    }
    const StepFunction f = counting_function(w, 1.0);
    if (!f.monotone() || f.upper_limit() != static_cast<double>(sites.size()) || f.base() != 0.0) ++t.a4;

    // (A6) eigenvalue stability under a perturbation of the potential
    const double eps = std::uniform_real_distribution<double>(0.0, 0.5)(g);
    std::vector<double> vals = omega.values();
    for (auto& v : vals) v += std::uniform_real_distribution<double>(-eps, eps)(g);
    const PotentialSample perturbed(spec, omega.sites(), vals);
    const RestrictedOperator hp = assemble(cube, perturbed);
    double diff = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) diff = std::max(diff, std::abs(vals[k] - omega.values()[k]));
    bool diag_only = hp.cols() == h.cols() && hp.row_start() == h.row_start();
    for (std::size_t k = 0; k < vals.size(); ++k) {
      diag_only = diag_only && hp.diagonal()[k] - h.diagonal()[k] == (2.0 * d + vals[k]) - (2.0 * d + omega.values()[k]);
    }
    const auto wp = eigenvalues(hp);
    double shift = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) shift = std::max(shift, std::abs(w[k] - wp[k]));
    const double a6_tol = 1e-10 + 1e-13 * static_cast<double>(w.size()) * (hi + 3.0);
    t.worst_a6_excess = std::max(t.worst_a6_excess, shift - diff);
    if (shift > diff + a6_tol || !diag_only) ++t.a6;
  }

  // (A5) a single site carries at most one state
  {
    const Site x = random_site(g, d, -20, 20);
    const SiteSet single{x};
    const StepFunction f = evcf(std::span<const Site>(single), sample(spec, single));
    if (f.upper_limit() != 1.0 || f.size() != 1) ++t.a5;
  }

  // (A3) almost additivity over random disjoint cubes
  {
    std::vector<Cube> cubes;
    const SiteSet all = random_disjoint_cubes(g, d, cubes);
    const PotentialSample om = sample(spec, all);
    const StepFunction whole = evcf(std::span<const Site>(all), om);
    std::vector<double> pooled;
    std::uint64_t bsum = 0;
    for (const auto& c : cubes) {
      const auto w = eigenvalues(assemble(c, om));
      pooled.insert(pooled.end(), w.begin(), w.end());
      bsum += b_function(c);
    }
    std::sort(pooled.begin(), pooled.end());
    const double gap = sup_norm_distance(whole, counting_function(pooled, 1.0));
    t.worst_a3_slack = std::min(t.worst_a3_slack, static_cast<double>(bsum) - gap);
    if (gap > static_cast<double>(bsum)) ++t.a3;
  }
  return t;
}

void properties_suite(SuiteReport& rep, const ValidationOptions& opts) {
  const auto tallies = parallel_map(opts.instances, opts.workers, [&](std::size_t i) { return property_instance(opts, i); });
  PropertyTally sum;
  for (const auto& t : tallies) {
    sum.a1 += t.a1;
    sum.a2 += t.a2;
    sum.a3 += t.a3;
    sum.a4 += t.a4;
    sum.a5 += t.a5;
    sum.a6 += t.a6;
    sum.gersh += t.gersh;
    sum.assemble += t.assemble;
    sum.cov += t.cov;
    sum.worst_a6_excess = std::max(sum.worst_a6_excess, t.worst_a6_excess);
    sum.worst_a3_slack = std::min(sum.worst_a3_slack, t.worst_a3_slack);
  }
  const auto n = opts.instances;
  auto line = [&](std::size_t fails) { return fmt(fails, " failures in ", n, " instances"); };
  rep.add("translation invariance (exact)", sum.a1 == 0, line(sum.a1));
  rep.add("translation covariance of assembly", sum.cov == 0, line(sum.cov));
  rep.add("locality", sum.a2 == 0, line(sum.a2));
  rep.add("almost additivity", sum.a3 == 0, fmt(line(sum.a3), ", min slack ", sum.worst_a3_slack));
  rep.add("evcf monotone with limits 0 and |L|", sum.a4 == 0, line(sum.a4));
  rep.add("single site evcf has sup 1", sum.a5 == 0, line(sum.a5));
  rep.add("eigenvalue shift at most sup|w - w'|", sum.a6 == 0,
          fmt(line(sum.a6), ", worst shift - sup|w-w'| = ", sum.worst_a6_excess));
  rep.add("spectrum inside the Gershgorin range", sum.gersh == 0, line(sum.gersh));
  rep.add("operator structure", sum.assemble == 0, line(sum.assemble));

  // Sturm inertia against the dense spectrum
  std::size_t mismatches = 0;
  const std::size_t shifts = 1000;
  auto g = rng_for(opts.seed, stream::verify, 0);
  for (std::size_t k = 0; k < shifts; k += 50) {
    FieldSpec spec = random_field_spec(g);
    spec.correlation_radius = 0;
    const Cube chain(1, uniform_int(g, 2, 80), random_site(g, 1, -100, 100));
    const RestrictedOperator h = assemble(chain, sample(spec, chain));
    const auto w = eigenvalues(h);
    const auto e = h.subdiagonal();
    for (std::size_t j = 0; j < 50; ++j) {
      const double x = std::uniform_real_distribution<double>(w.front() - 0.5, w.back() + 0.5)(g);
      if (sturm_count(h.diagonal(), e, x) != count_below(std::span<const double>(w), x)) ++mismatches;
    }
  }
  rep.add("Sturm count agrees with eigenvalue count", mismatches == 0, fmt(mismatches, " of ", shifts, " shifts differ"));
}

// ---------------------------------------------------------------- brackets

bool nesting_holds(const std::vector<BracketingCover>& covers) {
  for (std::size_t l = 0; l + 1 < covers.size(); ++l) {
    const auto& a = covers[l].grid;
    const auto& b = covers[l + 1].grid;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] != b[4 * j]) return false;
    }
  }
  return true;
}

bool contains_four(const std::vector<BracketingCover>& covers) {
  for (std::size_t l = 0; l + 1 < covers.size(); ++l) {
    const auto& a = covers[l].grid;
    const auto& b = covers[l + 1].grid;
    for (std::size_t j = 1; j < a.size(); ++j) {
      std::size_t inside = 0;
      for (std::size_t i = 1; i < b.size(); ++i) inside += b[i - 1] >= a[j - 1] && b[i] <= a[j] && (i - 1) / 4 == j - 1;
      if (inside != 4) return false;
    }
  }
  return true;
}

void brackets_suite(SuiteReport& rep, const ValidationOptions& opts) {
  FieldSpec spec;
  spec.marginal = Marginal::uniform(0.0, 1.0);
  const int qmax = opts.q_max;

  // exact Phi(x) = clamp(x - 2, 0, 1) of the single-site uniform model
  {
    std::vector<BracketingCover> exact;
    bool sizes = true, counts = true;
    for (int q = 1; q <= qmax; ++q) {
      BracketingCover c;
      c.level = q;
      c.grid = exact_uniform_grid(q);
      counts = counts && c.bracket_count() <= (std::size_t{1} << (2 * q));
      const double bound = std::ldexp(1.0, -q);
      for (std::size_t j = 1; j < c.grid.size(); ++j) {
        const double a = std::isinf(c.grid[j - 1]) ? 0.0 : std::clamp(c.grid[j - 1] - 2.0, 0.0, 1.0);
        const double b = std::isinf(c.grid[j]) ? 1.0 : std::clamp(c.grid[j] - 2.0, 0.0, 1.0);
        sizes = sizes && std::sqrt(b - a) <= bound;
      }
      exact.push_back(std::move(c));
    }
    rep.add("exact Phi: bracket count <= 2^{2q}", counts);
    rep.add("exact Phi: nesting identity", nesting_holds(exact));
    rep.add("exact Phi: bracket sizes <= 2^{-q}", sizes);
    const EmpiricalPhi probe = empirical_phi(spec, 1, 1, 0, 16, opts.seed);
    const auto stats = verify_bracketing(exact, probe, spec, 20000, derive_seed(opts.seed, stream::verify, 1), opts.workers);
    rep.add("exact Phi: monotone flags", std::all_of(stats.begin(), stats.end(), [](const auto& s) { return s.monotone; }));
  }

  // empirical Phi
  const std::uint64_t phi_seed = derive_seed(opts.seed, stream::phi, 0);
  const std::uint64_t verify_seed = derive_seed(opts.seed, stream::verify, 0);
  const EmpiricalPhi phi = empirical_phi(spec, 1, 1, 0, opts.phi_samples, phi_seed, opts.workers);
  const auto covers = build_bracketing(phi, qmax);
  bool counts = true;
  for (const auto& c : covers) counts = counts && c.bracket_count() <= (std::size_t{1} << (2 * c.level));
  rep.add("empirical Phi: bracket count <= 2^{2q}", counts);
  rep.add("empirical Phi: nesting identity (exact)", nesting_holds(covers));
  rep.add("empirical Phi: each bracket splits into four", contains_four(covers));
  const auto stats = verify_bracketing(covers, phi, spec, opts.verify_samples, verify_seed, opts.workers);
  rep.add("empirical Phi: monotone flags", std::all_of(stats.begin(), stats.end(), [](const auto& s) { return s.monotone; }));

  // Sizes: the fresh count in a bracket whose ends are the c-th and c'-th
  // order statistics of S draws is BetaBinomial(S', c'-c, S+1-(c'-c)).
  const double S = static_cast<double>(opts.phi_samples);
  for (const auto& st : stats) {
    const double bound = std::ldexp(1.0, -st.level);
    const auto k = st.size.size();
    std::size_t failed = 0, atoms = 0;
    double worst_z = -std::numeric_limits<double>::infinity();
    double max_size = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (st.atom[j]) ++atoms;
      const double a = st.edges[j], b = st.edges[j + 1];
      const double ca = std::isinf(a) ? 0.0 : std::round(phi.function(a) * S);
      const double cb = std::isinf(b) ? S + 1.0 : std::round(phi.function(b) * S);
      const auto q = beta_binomial_upper_quantile(opts.verify_samples, cb - ca, S + 1.0 - (cb - ca),
                                                  kThreeSigmaTail / static_cast<double>(k));
      const double limit = std::sqrt(static_cast<double>(q) / static_cast<double>(opts.verify_samples));
      if (st.size[j] > limit && !st.atom[j]) ++failed;
      if (st.size_stderr[j] > 0.0) worst_z = std::max(worst_z, (st.size[j] - bound) / st.size_stderr[j]);
      max_size = std::max(max_size, st.size[j]);
    }
    rep.add(fmt("empirical Phi: level ", st.level, " sizes within 2^{-q} plus three-sigma band"), failed == 0,
            fmt(k, " brackets, max size ", max_size, " vs 2^{-q} = ", bound, ", largest (size-2^{-q})/se = ", worst_z,
                ", ", failed, " outside band, ", atoms, " atoms"));
  }

  // a degenerate marginal puts all mass in one atom
  {
    FieldSpec deg;
    deg.marginal = Marginal::bernoulli(1.0, 0.0, 1.0);
    const EmpiricalPhi dphi = empirical_phi(deg, 1, 1, 0, 100, phi_seed);
    const auto dcov = build_bracketing(dphi, 2);
    const auto dst = verify_bracketing(dcov, dphi, deg, 500, verify_seed);
    bool ok = true;
    for (const auto& s : dst) {
      for (std::size_t j = 0; j < s.size.size(); ++j) ok = ok && (s.size[j] == 0.0 || s.atom[j]);
    }
    rep.add("degenerate field: brackets empty or flagged as atoms", ok);
  }
}

// ------------------------------------------------------------------ orlicz

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

std::vector<double> draw(std::uint64_t seed, std::size_t n, const std::function<double(std::mt19937_64&)>& f) {
  std::mt19937_64 g(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = f(g);
  return out;
}

void orlicz_suite(SuiteReport& rep, const ValidationOptions& opts) {
  const double c = 1.7;
  const std::vector<double> constant(50, c);
  {
    bool ok = true;
    for (double p : {1.0, 2.0, 3.0}) ok = ok && rel_close(orlicz_norm(constant, OrliczSpec::power(p)), c, 1e-6);
    const double psi12 = orlicz_norm(constant, OrliczSpec::psi(1.0, 2.0));
    const double psi22 = orlicz_norm(constant, OrliczSpec::psi(2.0, 2.0));
    const double psi13 = orlicz_norm(constant, OrliczSpec::psi(1.0, 3.0));
    ok = ok && rel_close(psi12, c / std::log(2.0), 1e-6) && rel_close(psi22, c / std::sqrt(std::log(2.0)), 1e-6) &&
         rel_close(psi13, c / std::log(3.0), 1e-6);
    rep.add("constant samples match closed forms (rel 1e-6)", ok, fmt("psi_{1,2}: ", psi12, " vs ", c / std::log(2.0)));
  }
  const auto uni = draw(derive_seed(opts.seed, stream::sample, 1), 100000,
                        [](auto& g) { return std::uniform_real_distribution<double>(0.0, 1.0)(g); });
  const auto expo = draw(derive_seed(opts.seed, stream::sample, 2), 100000,
                         [](auto& g) { return std::exponential_distribution<double>(1.0)(g); });
  {
    bool ok = true;
    for (double p : {1.0, 2.0}) {
      ok = ok && rel_close(orlicz_norm(uni, OrliczSpec::psi(p, 2.0)), orlicz_norm(uni, OrliczSpec::Psi(p)), 1e-6);
    }
    ok = ok && rel_close(orlicz_norm(expo, OrliczSpec::psi(1.0, 2.0)), orlicz_norm(expo, OrliczSpec::Psi(1.0)), 1e-6);
    rep.add("psi_{p,2} and Psi_p norms agree", ok);
  }
  {
    bool ok = true;
    const auto small = draw(derive_seed(opts.seed, stream::sample, 3), 2000,
                            [](auto& g) { return std::normal_distribution<double>(0.0, 1.0)(g); });
    for (const auto& spec : {OrliczSpec::power(2.0), OrliczSpec::psi(1.0, 2.0), OrliczSpec::psi(2.0, 3.0)}) {
      const double base = orlicz_norm(small, spec);
      for (double a : {0.25, 3.0, 40.0}) {
        std::vector<double> scaled = small;
        for (auto& v : scaled) v *= a;
        ok = ok && rel_close(orlicz_norm(scaled, spec), a * base, 1e-6);
      }
      std::vector<double> bigger = small;
      std::mt19937_64 g(5);
      for (auto& v : bigger) v = (std::abs(v) + std::uniform_real_distribution<double>(0.0, 0.5)(g)) * (v < 0 ? -1 : 1);
      ok = ok && orlicz_norm(bigger, spec) >= base * (1.0 - 1e-8);
    }
    rep.add("norm is positively homogeneous and monotone", ok);
  }
  {
    std::size_t violations = 0, points = 0;
    for (const auto* xs : {&uni, &expo}) {
      for (const auto& spec : {OrliczSpec::psi(1.0, 2.0), OrliczSpec::psi(2.0, 2.0), OrliczSpec::power(2.0)}) {
        const double D = orlicz_norm(*xs, spec);
        for (double f : {1.0, 2.0}) {
          const TailCheck t = orlicz_tail_check(*xs, spec, f * D);
          violations += t.violations;
          points += t.grid_points;
        }
      }
    }
    const TailCheck tc = orlicz_tail_check(constant, OrliczSpec::psi(1.0, 2.0), orlicz_norm(constant, OrliczSpec::psi(1.0, 2.0)));
    violations += tc.violations;
    rep.add("tail bound 1/Phi(y/D) holds at the Wilson 99% level", violations == 0,
            fmt(violations, " violations over ", points, " grid points"));
  }
  {
    // exponential(1): P(X >= y) = e^{-y}, so the psi_{1,2} norm is at most
    // (1 + 1)/(1 * 1) = 2 (and equals 2)
    const auto spec = OrliczSpec::psi(1.0, 2.0);
    const double bound = orlicz_tail_norm_bound(1.0, 1.0, 2.0, 1.0);
    const double norm = orlicz_norm(expo, spec);
    std::vector<double> phis(expo.size());
    double slope = 0.0;
    for (std::size_t i = 0; i < expo.size(); ++i) {
      phis[i] = spec(expo[i] / bound);
      slope += phis[i] * expo[i] / (bound * bound);
    }
    slope /= static_cast<double>(expo.size());
    const MeanEstimate est = mean_estimate(phis);
    const double tol = 3.0 * est.stderr_ / slope;
    rep.add("norm of exponential samples within the tail-derived bound", norm <= bound + tol,
            fmt("norm ", norm, ", bound ", bound, " + ", tol));
  }
}

// ------------------------------------------------------- bernstein/massart

void bernstein_suite(SuiteReport& rep, const ValidationOptions& opts) {
  constexpr int s = 100;
  const std::size_t R = opts.replicas;
  constexpr std::size_t chunk = 4096;
  const std::size_t chunks = (R + chunk - 1) / chunk;
  // sums of 100 centred Bernoulli(1/2): popcount of 100 random bits minus 50
  const auto parts = parallel_map(chunks, opts.workers, [&](std::size_t c) {
    auto g = rng_for(opts.seed, stream::replica, c);
    std::array<std::uint64_t, 2> hits{0, 0};
    const std::size_t lo = c * chunk, hi = std::min(R, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t a = g(), b = g() & ((std::uint64_t{1} << 36) - 1);
      const int sum = std::popcount(a) + std::popcount(b) - s / 2;
      hits[0] += sum >= 10;
      hits[1] += sum >= 20;
    }
    return hits;
  });
  std::array<std::uint64_t, 2> hits{0, 0};
  for (const auto& p : parts) {
    hits[0] += p[0];
    hits[1] += p[1];
  }
  for (int k = 0; k < 2; ++k) {
    const double x = (k + 1) * std::sqrt(static_cast<double>(s));
    const double bound = bernstein_bound(s / 4.0, 1.0, x);
    const Interval ci = wilson_interval(hits[k], R);
    rep.add(fmt("Bernstein domination at x = ", x), ci.hi <= bound,
            fmt("freq ", static_cast<double>(hits[k]) / R, " (Wilson hi ", ci.hi, ") vs bound ", bound));
  }
}

struct MassartDraw {
  double Z;
  double U;
};

MassartDraw massart_replica(std::mt19937_64& g) {
  constexpr int T = 64, s = 50;
  std::array<double, T> sums{}, squares{};
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < s; ++i) {
    for (int t = 0; t < T; ++t) {
      const double v = u(g);
      sums[t] += v;
      squares[t] += v * v;
    }
  }
  double Z = 0.0, U = 0.0;
  for (int t = 0; t < T; ++t) {
    Z = std::max(Z, std::abs(sums[t]));
    U = std::max(U, squares[t]);
  }
  return {Z, U};
}

void massart_suite(SuiteReport& rep, const ValidationOptions& opts) {
  const std::size_t R = opts.replicas;
  const std::size_t pilot = std::max<std::size_t>(R / 5, 1000);
  constexpr std::size_t chunk = 2048;
  auto run = [&](std::size_t count, std::uint64_t tag) {
    const std::size_t chunks = (count + chunk - 1) / chunk;
    auto parts = parallel_map(chunks, opts.workers, [&](std::size_t c) {
      auto g = rng_for(opts.seed, tag, c);
      std::vector<MassartDraw> out;
      const std::size_t lo = c * chunk, hi = std::min(count, lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) out.push_back(massart_replica(g));
      return out;
    });
    std::vector<MassartDraw> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return all;
  };
  const auto pilots = run(pilot, stream::pilot);
  double EZ = 0.0, EU = 0.0;
  for (const auto& p : pilots) {
    EZ += p.Z;
    EU += p.U;
  }
  EZ /= static_cast<double>(pilots.size());
  EU /= static_cast<double>(pilots.size());
  const double sigma2 = 50.0 / 3.0;
  const auto draws = run(R, stream::replica);
  for (double eta : {0.5, 1.0, 2.0}) {
    const double thr = massart_threshold(EZ, sigma2, EU, eta);
    const auto hits = static_cast<std::uint64_t>(std::count_if(draws.begin(), draws.end(), [&](const auto& d) { return d.Z >= thr; }));
    const Interval ci = wilson_interval(hits, R);
    rep.add(fmt("Massart domination at eta = ", eta), ci.hi <= std::exp(-eta),
            fmt("freq ", static_cast<double>(hits) / R, " (Wilson hi ", ci.hi, ") vs e^{-eta} ", std::exp(-eta),
                "; EZ ", EZ, ", EU ", EU));
  }
}

// ------------------------------------------------------------------ bounds

void bounds_suite(SuiteReport& rep, const ValidationOptions&) {
  const SeriesValue S = chaining_series_certified();
  rep.add("chaining series = 3.5622 +- 0.001 with tail < 1e-6", std::abs(S.value - 3.5622) <= 0.001 && S.tail_bound < 1e-6,
          fmt("S = ", S.value, ", tail ", S.tail_bound, ", terms ", S.terms));
  const double K2 = k_2();
  rep.add("K_2 in (1074, 1076) and below 480/log(3/2)+16/log 2", K2 > 1074 && K2 < 1076 && K2 < theorem1_K(),
          fmt("K_2 = ", K2, ", K = ", theorem1_K()));
  rep.add("C(3) = 901", theorem1_C(3) == 901.0);
  {
    bool ok = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double M = 2.0; M <= 100.0; M += 0.5) {
      const double v = k_M(M);
      ok = ok && v < prev;
      prev = v;
    }
    for (double M : {2.0, 3.0, 10.0, 100.0}) ok = ok && k_M(M) < k_M_cap(M);
    rep.add("K_M decreasing on [2,100] and below its cap", ok);
  }
  {
    const auto g1 = geometric_bound(1, 4000, 10, 0);
    const auto g3 = geometric_bound(3, 100, 5, 0);
    const bool ok = std::abs(g1.total - 0.668) < 1e-12 && std::abs(g3.total - 39.76) < 1e-12 &&
                    !geometric_bound(1, 40, 10, 0).valid;
    rep.add("explicit geometric bound examples", ok, fmt(g1.total, ", ", g3.total));
  }
  {
    std::size_t configs = 0, violations = 0;
    for (int d = 1; d <= 3; ++d) {
      for (Coord n = 1; n <= 200; ++n) {
        for (Coord m = 1; 4 * m < n; ++m) {
          for (Coord r = 0; 2 * r + 1 < m; ++r) {
            ++configs;
            if (decomposition_bound(d, n, m, r).total > geometric_bound(d, n, m, r).total) ++violations;
          }
        }
      }
    }
    rep.add("decomposition bound <= explicit bound (d<=3, n<=200)", violations == 0,
            fmt(violations, " violations in ", configs, " configurations"));
  }
  {
    bool ok = true;
    for (double e = std::log(17.0); e <= std::log(1e6) + 1e-9; e += 0.01) {
      const auto n = static_cast<std::uint64_t>(std::llround(std::exp(e)));
      if (n < 17) continue;
      ok = ok && thm2_error_bound(3, n, 0, 2).total <= theorem1_C(3) / (std::sqrt(static_cast<double>(n)) - 1.0);
    }
    rep.add("error bound below C/(sqrt(n)-1) for d=3, r=0", ok);
  }
  {
    bool ok = true;
    for (std::uint64_t a = 5; a <= 1000; ++a) {
      const std::uint64_t n = a * a;
      const double p = thm2_probability(3, n, 2.0, 2).total;
      ok = ok && p >= 1.0 - 2.0 * std::exp(-std::pow(std::sqrt(static_cast<double>(n)) - 1.0, 0.5) / theorem1_K());
    }
    rep.add("probability bound dominates 1-2exp(-(sqrt(n)-1)^{1/2}/K) on perfect squares", ok);
  }
  {
    bool ok = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (std::uint64_t a = 5; a <= 1000; ++a) {
      const double p = thm2_probability(3, a * a, 2.0, 2).total;
      ok = ok && p > prev;
      prev = p;
    }
    rep.add("probability bound increasing along perfect squares", ok);
  }
  {
    const auto t1 = thm1_min_side(3, 0.05, 0.1);
    rep.add("minimal side for d=3, alpha=0.05, beta=0.1", std::abs(t1.total / 3.928942639358e14 - 1.0) < 1e-9,
            fmt(t1.total));
    const auto t3 = thm3_probability(5, 100, 0, 2);
    rep.add("sub-exponential size threshold for d=5, k=2", std::abs(t3.term("n_threshold") / 3.46376980792956e16 - 1.0) < 1e-9,
            fmt(t3.term("n_threshold")));
  }
  {
    bool chain = true, identity = true, roundtrip = true;
    for (double kappa = 0.01; kappa <= 1.0 + 1e-12; kappa += 0.01) {
      chain = chain && std::pow(std::sqrt(kappa + 1.0) - 1.0, 2) >= kappa * kappa / 6.0;
      const double s = std::pow(12.0 * K2 / (kappa * kappa), 2);
      const double lhs = kappa * kappa * s / 12.0 - K2 * std::sqrt(s) / 2.0;
      identity = identity && std::abs(lhs - kappa * kappa * s / 24.0) <= 1e-9 * lhs;
      const double s2 = 4.0 * std::pow(K2 / kappa, 2);
      const double eta = massart_eta(kappa, s2);
      const double back = (K2 * std::sqrt(s2) + 2.0 * std::sqrt(2.0 * s2) * std::sqrt(eta) + 2.0 * eta) / s2;
      roundtrip = roundtrip && std::abs(back - kappa) <= 1e-10;
    }
    rep.add("(sqrt(kappa+1)-1)^2 >= kappa^2/6 on (0,1]", chain);
    rep.add("kappa^2 s/12 - K_2 sqrt(s)/2 = kappa^2 s/24 at the threshold", identity);
    rep.add("Massart threshold inverse round trip", roundtrip);
  }
}

}  // namespace

std::vector<double> exact_uniform_grid(int q) {
  const std::size_t k = std::size_t{1} << (2 * q);
  const double eps = std::ldexp(1.0, -2 * q);
  std::vector<double> grid;
  grid.push_back(-std::numeric_limits<double>::infinity());
  for (std::size_t j = 1; j < k; ++j) grid.push_back(2.0 + static_cast<double>(j) * eps);
  grid.push_back(std::numeric_limits<double>::infinity());
  return grid;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "properties", "brackets", "orlicz",
                                              "bernstein", "massart",    "bounds"};
  return names;
}

SuiteReport run_suite(const std::string& name, const ValidationOptions& opts) {
  static const std::map<std::string, std::function<void(SuiteReport&, const ValidationOptions&)>> table{
      {"geometry", geometry_suite}, {"properties", properties_suite}, {"brackets", brackets_suite},
      {"orlicz", orlicz_suite},     {"bernstein", bernstein_suite},   {"massart", massart_suite},
      {"bounds", bounds_suite}};
  const auto it = table.find(name);
  require(it != table.end(), "unknown validation suite: " + name);
  SuiteReport rep;
  rep.name = name;
  const auto start = std::chrono::steady_clock::now();
  it->second(rep, opts);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<SuiteReport> run_validation(const std::vector<std::string>& names, const ValidationOptions& opts) {
  std::vector<SuiteReport> out;
  for (const auto& n : names.empty() ? suite_names() : names) out.push_back(run_suite(n, opts));
  return out;
}

DecompositionRow decomposition_sample(const FieldSpec& spec, int d, Coord n, Coord m, Coord r) {
  const BoundReport dec = decomposition_bound(d, n, m, r);
  const Cube cube(d, n);
  const PotentialSample omega = sample(spec, cube);
  const StepFunction whole = normalized_evcf(cube, omega, static_cast<double>(cube.size()));
  const StepFunction blocks = block_average(omega, n, m, r);
  DecompositionRow row{};
  row.seed = spec.seed;
  row.lhs = sup_norm_distance(whole, blocks);
  row.decomposition = dec.total;
  row.explicit_bound = n > 4 * m ? geometric_bound(d, n, m, r).total : std::numeric_limits<double>::quiet_NaN();
  row.pass = row.lhs <= row.decomposition && (n <= 4 * m || row.decomposition <= row.explicit_bound);
  return row;
}

}  // namespace ids
