#include "ids/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ids/errors.hpp"
#include "ids/operator.hpp"
#include "ids/parallel.hpp"
#include "ids/spectra.hpp"
#include "ids/statistics.hpp"

namespace ids {

namespace {

Cube block_interior(int d, Coord m, Coord r, const Site& offset) {
  require(m > 2 * r, "block interior is empty (need m > 2r)");
  Site o(offset);
  for (int i = 0; i < d; ++i) o[i] += r;
  return Cube(d, m - 2 * r, o);
}

// Samples [begin, end) of a stream, eigenvalues concatenated in sample order.
template <class SeedFn>
std::vector<double> pooled_eigenvalues(const FieldSpec& spec, const Cube& block, std::size_t count, SeedFn seed_of,
                                       unsigned workers) {
  constexpr std::size_t chunk = 256;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  auto parts = parallel_map(chunks, workers, [&](std::size_t c) {
    std::vector<double> out;
    const std::size_t lo = c * chunk, hi = std::min(count, lo + chunk);
    out.reserve((hi - lo) * static_cast<std::size_t>(block.size()));
    FieldSpec local = spec;
    for (std::size_t i = lo; i < hi; ++i) {
      local.seed = seed_of(i);
      auto w = block_eigenvalues(local, block);
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  });
  std::vector<double> all;
  all.reserve(count * static_cast<std::size_t>(block.size()));
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace

std::vector<double> block_eigenvalues(const FieldSpec& spec, const Cube& sites) {
  if (sites.size() == 1) return {2.0 * sites.dim() + field_value(spec, sites.origin())};
  const PotentialSample omega = sample(spec, sites);
  return eigenvalues(assemble(omega.sites(), omega));
}

StepFunction block_average(const PotentialSample& omega, Coord n, Coord m, Coord r) {
  require(!omega.empty(), "block_average: empty sample");
  require(m > 2 * r + 1, "block_average requires m > 2r+1");
  const int d = omega.sites().front().dim();
  const TilingSet tiles = tiling(n, m, d);
  std::vector<double> pooled;
  for (std::size_t i = 0; i < tiles.count(); ++i) {
    const Cube inner = block_interior(d, m, r, tiles.offsets()[i]);
    const SiteSet sites = inner.sites();
    const auto w = eigenvalues(assemble(sites, omega));
    pooled.insert(pooled.end(), w.begin(), w.end());
  }
  std::sort(pooled.begin(), pooled.end());
  return counting_function(pooled, static_cast<double>(tiles.count()) * static_cast<double>(ipow(m, d)));
}

double EmpiricalPhi::upper() const {
  return static_cast<double>(ipow(static_cast<std::uint64_t>(m - 2 * r), dim)) /
         static_cast<double>(ipow(static_cast<std::uint64_t>(m), dim));
}

EmpiricalPhi empirical_phi(const FieldSpec& spec, int d, Coord m, Coord r, std::size_t samples, std::uint64_t seed,
                           unsigned workers) {
  require(samples >= 1, "empirical_phi requires at least one sample");
  require(m >= 1 && r >= 0, "empirical_phi: parameters out of range");
  const Cube block = block_interior(d, m, r, Site(d));
  auto all = pooled_eigenvalues(
      spec, block, samples, [&](std::size_t i) { return derive_seed(seed, stream::phi, i); }, workers);
  std::sort(all.begin(), all.end());
  EmpiricalPhi phi;
  phi.function = counting_function(all, static_cast<double>(samples) * static_cast<double>(ipow(m, d)));
  phi.sample_count = samples;
  phi.dim = d;
  phi.m = m;
  phi.r = r;
  return phi;
}

double quantile(const StepFunction& f, double alpha) {
  require(alpha > 0.0, "quantile requires alpha > 0");
  require(alpha <= f.upper_limit(), "quantile: alpha exceeds the upper limit of the function");
  if (f.base() >= alpha) return -std::numeric_limits<double>::infinity();
  const auto& v = f.values();
  // values of a monotone function are sorted
  if (f.monotone()) {
    const auto it = std::lower_bound(v.begin(), v.end(), alpha);
    return f.breakpoints()[static_cast<std::size_t>(it - v.begin())];
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= alpha) return f.breakpoints()[i];
  }
  throw PreconditionError("quantile: level not reached");
}

std::vector<double> BracketingCover::edges() const {
  std::vector<double> e;
  for (double x : grid) {
    if (e.empty() || e.back() != x) e.push_back(x);
  }
  return e;
}

std::vector<BracketingCover> build_bracketing(const StepFunction& phi, double upper, int q_max) {
  require(q_max >= 1, "build_bracketing requires q_max >= 1");
  require(q_max <= 12, "build_bracketing: q_max too large");
  require(upper > 0.0 && upper <= phi.upper_limit(), "build_bracketing: upper limit inconsistent with Phi");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<BracketingCover> out;
  for (int q = 1; q <= q_max; ++q) {
    const std::size_t k = std::size_t{1} << (2 * q);
    const double eps = std::ldexp(1.0, -2 * q);
    BracketingCover c;
    c.level = q;
    c.grid.reserve(k + 1);
    c.grid.push_back(-inf);
    for (std::size_t j = 1; j < k; ++j) c.grid.push_back(quantile(phi, static_cast<double>(j) * eps * upper));
    c.grid.push_back(inf);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BracketingCover> build_bracketing(const EmpiricalPhi& phi, int q_max) {
  return build_bracketing(phi.function, phi.upper(), q_max);
}

std::vector<BracketStats> verify_bracketing(std::span<const BracketingCover> covers, const EmpiricalPhi& phi,
                                            const FieldSpec& spec, std::size_t samples, std::uint64_t seed,
                                            unsigned workers) {
  require(samples >= 1, "verify_bracketing requires at least one sample");
  const Cube block = block_interior(phi.dim, phi.m, phi.r, Site(phi.dim));
  const auto full = static_cast<std::int64_t>(block.size());

  std::vector<std::vector<double>> edges;
  std::size_t total_brackets = 0;
  for (const auto& c : covers) {
    edges.push_back(c.edges());
    total_brackets += edges.back().size() - 1;
  }

  struct Sums {
    std::vector<std::uint64_t> sq;      // sum of dN^2
    std::vector<long double> quad;      // sum of dN^4
    bool monotone = true;
  };
  constexpr std::size_t chunk = 256;
  const std::size_t chunks = (samples + chunk - 1) / chunk;
  auto parts = parallel_map(chunks, workers, [&](std::size_t c) {
    Sums s;
    s.sq.assign(total_brackets, 0);
    s.quad.assign(total_brackets, 0.0L);
    FieldSpec local = spec;
    const std::size_t lo = c * chunk, hi = std::min(samples, lo + chunk);
    for (std::size_t i = lo; i < hi; ++i) {
      local.seed = derive_seed(seed, stream::verify, i);
      const auto w = block_eigenvalues(local, block);
      std::size_t slot = 0;
      for (const auto& e : edges) {
        std::int64_t prev = 0;
        for (std::size_t j = 1; j < e.size(); ++j) {
          const std::int64_t cur =
              std::isinf(e[j]) ? full : static_cast<std::int64_t>(count_below(std::span<const double>(w), e[j]));
          const std::int64_t dn = cur - prev;
          if (dn < 0) s.monotone = false;
          const auto d2 = static_cast<std::uint64_t>(dn * dn);
          s.sq[slot] += d2;
          s.quad[slot] += static_cast<long double>(d2) * static_cast<long double>(d2);
          ++slot;
          prev = cur;
        }
      }
    }
    return s;
  });

  Sums total;
  total.sq.assign(total_brackets, 0);
  total.quad.assign(total_brackets, 0.0L);
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < total_brackets; ++i) {
      total.sq[i] += p.sq[i];
      total.quad[i] += p.quad[i];
    }
    total.monotone = total.monotone && p.monotone;
  }

  const double norm2 = static_cast<double>(ipow(static_cast<std::uint64_t>(phi.m), phi.dim));
  const double nsq = norm2 * norm2;
  const double ns = static_cast<double>(samples);
  std::vector<BracketStats> out;
  std::size_t slot = 0;
  for (std::size_t l = 0; l < covers.size(); ++l) {
    BracketStats st;
    st.level = covers[l].level;
    st.edges = edges[l];
    st.samples = samples;
    st.monotone = total.monotone;
    const double eps = std::ldexp(1.0, -2 * st.level);
    for (std::size_t j = 1; j < st.edges.size(); ++j, ++slot) {
      const double msq = static_cast<double>(total.sq[slot]) / ns / nsq;
      const double m4 = static_cast<double>(total.quad[slot] / static_cast<long double>(ns)) / (nsq * nsq);
      const double var = std::max(0.0, m4 - msq * msq);
      const double size = std::sqrt(msq);
      st.mean_sq.push_back(msq);
      st.size.push_back(size);
      st.size_stderr.push_back(size > 0.0 ? std::sqrt(var / ns) / (2.0 * size) : 0.0);
      // atom: a single jump of Phi_emp inside (x_{j-1}, x_j] heavier than eps
      const double a = st.edges[j - 1], b = st.edges[j];
      bool atom = false;
      const auto& bp = phi.function.breakpoints();
      auto it = std::isinf(a) ? bp.begin() : std::upper_bound(bp.begin(), bp.end(), a);
      for (; it != bp.end() && (std::isinf(b) || *it <= b); ++it) {
        if (phi.function(*it) - phi.function.left_limit(*it) > eps) {
          atom = true;
          break;
        }
      }
      st.atom.push_back(atom);
    }
    out.push_back(std::move(st));
  }
  return out;
}

std::uint64_t resolved_reference_seed(const ConcentrationConfig& cfg) {
  return cfg.reference_seed != 0 ? cfg.reference_seed : derive_seed(cfg.seed, stream::reference, 0);
}

std::size_t resolved_reference_samples(const ConcentrationConfig& cfg) {
  return cfg.reference_samples != 0 ? cfg.reference_samples : 10 * cfg.replicas * cfg.s;
}

namespace {

void check_concentration(const ConcentrationConfig& cfg) {
  require(cfg.s >= 1 && cfg.replicas >= 1, "concentration: s and replicas must be positive");
  require(cfg.m > 2 * cfg.r, "concentration: block interior is empty (need m > 2r)");
  require(cfg.r >= cfg.spec.independence_radius(),
          "concentration: r must be at least the field's independence radius");
  require(resolved_reference_seed(cfg) != cfg.seed, "concentration: reference and experiment seeds collide");
  for (double k : cfg.kappas) require(k > 0.0, "concentration: kappa must be positive");
}

}  // namespace

EmpiricalPhi concentration_reference(const ConcentrationConfig& cfg) {
  check_concentration(cfg);
  return empirical_phi(cfg.spec, cfg.d, cfg.m, cfg.r, resolved_reference_samples(cfg), resolved_reference_seed(cfg),
                       cfg.workers);
}

ConcentrationTable concentration_experiment(const ConcentrationConfig& cfg) {
  return concentration_experiment(cfg, concentration_reference(cfg));
}

ConcentrationTable concentration_experiment(const ConcentrationConfig& cfg, const EmpiricalPhi& reference) {
  check_concentration(cfg);
  require(reference.dim == cfg.d && reference.m == cfg.m && reference.r == cfg.r,
          "concentration: reference block does not match the experiment");
  const int d = cfg.d;
  const double normalizer = static_cast<double>(cfg.s) * static_cast<double>(ipow(cfg.m, d));

  // block i sits in the tile at i m e_0; interiors are 2r+1 apart
  std::vector<Cube> blocks;
  blocks.reserve(cfg.s);
  for (std::size_t i = 0; i < cfg.s; ++i) {
    blocks.push_back(block_interior(d, cfg.m, cfg.r, Site::unit(d, 0, static_cast<Coord>(i) * cfg.m)));
  }

  const auto sups = parallel_map(cfg.replicas, cfg.workers, [&](std::size_t rep) {
    FieldSpec local = cfg.spec;
    local.seed = derive_seed(cfg.seed, stream::replica, rep);
    std::vector<double> pooled;
    for (const auto& b : blocks) {
      const auto w = block_eigenvalues(local, b);
      pooled.insert(pooled.end(), w.begin(), w.end());
    }
    std::sort(pooled.begin(), pooled.end());
    return sup_norm_distance(counting_function(pooled, normalizer), reference.function);
  });

  ConcentrationTable table;
  table.sup_norms = sups;
  table.mean_sup = std::accumulate(sups.begin(), sups.end(), 0.0) / static_cast<double>(sups.size());
  table.reference_samples = reference.sample_count;
  table.reference_band = 3.0 * reference.upper() / (2.0 * std::sqrt(static_cast<double>(reference.sample_count)));
  for (double kappa : cfg.kappas) {
    ConcentrationRow row{};
    row.kappa = kappa;
    row.exceedances = static_cast<std::uint64_t>(std::count_if(sups.begin(), sups.end(), [&](double v) { return v >= kappa; }));
    row.freq = static_cast<double>(row.exceedances) / static_cast<double>(cfg.replicas);
    const Interval ci = wilson_interval(row.exceedances, cfg.replicas);
    row.wilson_lo = ci.lo;
    row.wilson_hi = ci.hi;
    row.cor59 = cor59_probability(static_cast<double>(cfg.s), kappa, cfg.M);
    row.cor511 = std::numeric_limits<double>::quiet_NaN();
    if (kappa <= 1.0) {
      const BoundReport b = cor511_probability(static_cast<double>(cfg.s), kappa);
      const bool any = std::any_of(b.side_conditions.begin(), b.side_conditions.end(), [](const auto& c) { return c.second; });
      if (any) row.cor511 = b.total;
    }
    row.s = cfg.s;
    row.replicas = cfg.replicas;
    table.rows.push_back(row);
  }
  return table;
}

namespace {

struct MeanAndError {
  StepFunction mean;
  StepFunction err;
};

// Pooled mean of N(L_n^r)/|L_n| and its pointwise standard error. Per-sample
// counts are tracked exactly so the variance is computed from integers.
MeanAndError reference_level(const FieldSpec& spec, int d, Coord n, Coord r, std::size_t samples,
                             std::uint64_t seed, unsigned workers) {
  const Cube block = block_interior(d, n, r, Site(d));
  const std::uint64_t level_seed = derive_seed(seed, stream::reference, static_cast<std::uint64_t>(n));
  auto per_sample = parallel_map(samples, workers, [&](std::size_t i) {
    FieldSpec local = spec;
    local.seed = derive_seed(level_seed, stream::sample, i);
    return block_eigenvalues(local, block);
  });
  struct Ev {
    double x;
    std::uint32_t sample;
  };
  std::vector<Ev> events;
  for (std::size_t i = 0; i < samples; ++i) {
    for (double x : per_sample[i]) events.push_back({x, static_cast<std::uint32_t>(i)});
  }
  std::sort(events.begin(), events.end(), [](const Ev& a, const Ev& b) { return a.x < b.x || (a.x == b.x && a.sample < b.sample); });

  const double vol = static_cast<double>(ipow(static_cast<std::uint64_t>(n), d));
  const double S = static_cast<double>(samples);
  std::vector<std::uint64_t> counts(samples, 0);
  std::uint64_t sum = 0, sumsq = 0;
  std::vector<double> bps, means, errs;
  for (std::size_t k = 0; k < events.size();) {
    const double x = events[k].x;
    for (; k < events.size() && events[k].x == x; ++k) {
      auto& c = counts[events[k].sample];
      sumsq += 2 * c + 1;
      ++c;
      ++sum;
    }
    bps.push_back(x);
    means.push_back(static_cast<double>(sum) / (S * vol));
    double err = 0.0;
    if (samples > 1) {
      const double mean = static_cast<double>(sum) / S;
      const double var = std::max(0.0, (static_cast<double>(sumsq) - S * mean * mean) / (S - 1.0));
      err = std::sqrt(var / S) / vol;
    }
    errs.push_back(err);
  }
  return {StepFunction(0.0, bps, means), StepFunction(0.0, std::move(bps), std::move(errs))};
}

// max over x of sqrt(f(x)^2 + g(x)^2) for nonnegative step functions
double max_combined_error(const StepFunction& f, const StepFunction& g) {
  const auto& fb = f.breakpoints();
  const auto& gb = g.breakpoints();
  double fv = f.base(), gv = g.base();
  double best = std::hypot(fv, gv);
  std::size_t i = 0, j = 0;
  while (i < fb.size() || j < gb.size()) {
    const double x = (j >= gb.size() || (i < fb.size() && fb[i] <= gb[j])) ? fb[i] : gb[j];
    if (i < fb.size() && fb[i] == x) fv = f.values()[i++];
    if (j < gb.size() && gb[j] == x) gv = g.values()[j++];
    best = std::max(best, std::hypot(fv, gv));
  }
  return best;
}

}  // namespace

std::vector<ReferenceEntry> reference_ids(const FieldSpec& spec, int d, Coord r, std::span<const Coord> ns,
                                          std::size_t samples, std::uint64_t seed, unsigned workers) {
  require(samples >= 1, "reference_ids requires at least one sample");
  require(r >= 0, "reference_ids: r must be nonnegative");
  for (Coord n : ns) require(n > 2 * r + 1, "reference_ids requires n > 2r+1 for every n");
  std::vector<ReferenceEntry> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto level = reference_level(spec, d, ns[i], r, samples, seed, workers);
    ReferenceEntry e;
    e.n = ns[i];
    e.mean = std::move(level.mean);
    e.stderr_ = std::move(level.err);
    if (i > 0) {
      const auto& prev = out.back();
      e.gap = sup_norm_distance(prev.mean, e.mean);
      e.bound = expectation_convergence_bound(d, prev.n, r) + expectation_convergence_bound(d, e.n, r);
      e.band = 3.0 * max_combined_error(prev.stderr_, e.stderr_);
      e.within = e.gap <= e.bound + e.band;
    }
    out.push_back(std::move(e));
  }
  return out;
}

ConfidenceRegion confidence_region(const PotentialSample& omega, Coord n, int d, Coord r, double beta, double alpha) {
  require(beta > 0.0, "confidence_region requires beta > 0");
  const Cube cube(d, n);
  ConfidenceRegion region;
  region.measured = normalized_evcf(cube, omega, static_cast<double>(cube.size()));
  auto clip = [&](double shift) {
    std::vector<double> vals;
    for (double v : region.measured.values()) vals.push_back(std::clamp(v + shift, 0.0, 1.0));
    return StepFunction(std::clamp(region.measured.base() + shift, 0.0, 1.0), region.measured.breakpoints(),
                        std::move(vals));
  };
  region.lower = clip(-beta);
  region.upper = clip(beta);
  if (d >= 3 && beta < 1.0) {
    region.required_L = thm1_min_side(d, alpha, beta).total;
  }
  region.certified = d >= 3 && r == 0 && static_cast<double>(n) > region.required_L;
  return region;
}

}  // namespace ids
