// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ids/bounds.hpp"
#include "ids/empirical.hpp"
#include "ids/parallel.hpp"
#include "ids/validation.hpp"

using namespace ids;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

template <class... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

unsigned workers() { return default_workers(); }

Outcome suites(std::initializer_list<const char*> names, const ValidationOptions& opts) {
  bool ok = true;
  std::string detail;
  std::size_t checks = 0;
  for (const char* n : names) {
    const SuiteReport rep = run_suite(n, opts);
    checks += rep.checks.size();
    for (const auto& c : rep.checks) {
      if (!c.passed) {
        ok = false;
        detail += cat(" FAILED ", rep.name, ": ", c.name, " (", c.detail, ");");
      }
    }
  }
  return {ok, cat(checks, " checks", detail)};
}

Outcome constants() {
  const SeriesValue S = chaining_series_certified();
  const double K2 = k_2();
  const bool s_ok = std::abs(S.value - 3.5622) <= 0.001 && S.tail_bound < 1e-6 &&
                    std::abs(S.value + S.tail_bound - 3.5622) <= 0.001;
  const bool k_ok = K2 > 1074.0 && K2 < 1076.0 && K2 < theorem1_K() && std::abs(theorem1_K() - 1206.9) < 0.01;
  const bool c_ok = theorem1_C(3) == 901.0;
  return {s_ok && k_ok && c_ok, cat("S = ", S.value, " (tail <= ", S.tail_bound, "), K_2 = ", K2, ", K = ", theorem1_K(),
                                    ", C(3) = ", theorem1_C(3))};
}

struct GeometryCase {
  int d;
  Coord n, m, r;
  FieldSpec spec;
};

std::vector<GeometryCase> geometry_cases() {
  std::mt19937_64 g(0x6e0d);
  auto pick = [&](Coord lo, Coord hi) { return std::uniform_int_distribution<Coord>(lo, hi)(g); };
  std::vector<GeometryCase> out;
  for (int i = 0; i < 100; ++i) {
    GeometryCase c{};
    if (i < 45) {
      c.d = 1;
      c.m = pick(2, 200);
      c.n = pick(4 * c.m + 1, 4000);
    } else if (i < 85) {
      c.d = 2;
      c.m = pick(2, 14);
      c.n = pick(4 * c.m + 1, 60);
    } else {
      c.d = 3;
      c.m = pick(2, 4);
      c.n = pick(4 * c.m + 1, 20);
    }
    c.r = pick(0, (c.m - 2) / 2);
    switch (i % 3) {
      case 0: c.spec.marginal = Marginal::uniform(0.0, 1.0); break;
      case 1: c.spec.marginal = Marginal::bernoulli(0.5, 0.0, 2.0); break;
      default:
        c.spec.marginal = Marginal::uniform(-1.0, 1.0);
        c.spec.correlation_radius = 1;
    }
    c.spec.seed = g();
    out.push_back(c);
  }
  return out;
}

Outcome geometric() {
  const auto cases = geometry_cases();
  const auto rows = parallel_map(cases.size(), workers(), [&](std::size_t i) {
    const auto& c = cases[i];
    return decomposition_sample(c.spec, c.d, c.n, c.m, c.r);
  });
  std::size_t fails = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    fails += !row.pass;
    worst = std::min(worst, row.decomposition - row.lhs);
  }
  return {fails == 0, cat(rows.size(), " configurations, ", fails, " violations, min slack ", worst)};
}

Outcome concentration() {
  const std::vector<std::size_t> ss{100, 400, 1600};
  const std::size_t R = 2000;
  ConcentrationConfig cfg;
  cfg.spec.marginal = Marginal::uniform(0.0, 1.0);
  cfg.d = 1;
  cfg.m = 1;
  cfg.r = 0;
  cfg.kappas = {0.02, 0.05, 0.1, 0.2};
  cfg.replicas = R;
  cfg.seed = 77;
  cfg.workers = workers();
  cfg.s = ss.back();
  const EmpiricalPhi reference = concentration_reference(cfg);  // 10 R max(s) samples

  bool ok = true;
  std::string detail;
  std::vector<double> means;
  std::size_t informative = 0, rows = 0;
  for (std::size_t s : ss) {
    cfg.s = s;
    const ConcentrationTable t = concentration_experiment(cfg, reference);
    means.push_back(t.mean_sup);
    for (const auto& row : t.rows) {
      ++rows;
      const double bound = std::isnan(row.cor511) ? row.cor59 : std::min(row.cor59, row.cor511);
      if (bound < 1.0) ++informative;
      if (row.wilson_hi > bound) {
        ok = false;
        detail += cat(" s=", s, " kappa=", row.kappa, " freq ", row.freq, " > ", bound, ";");
      }
    }
  }
  const double r1 = means[0] / means[1], r2 = means[1] / means[2];
  const bool decreasing = means[0] > means[1] && means[1] > means[2];
  const bool window = r1 >= 1.5 && r1 <= 3.0 && r2 >= 1.5 && r2 <= 3.0;
  ok = ok && decreasing && window;
  // DKW / Kolmogorov oracle for the single-site case: E sup ~ sqrt(pi/2) log 2 / sqrt(s)
  const double kolmogorov = std::sqrt(M_PI / 2.0) * std::log(2.0);
  return {ok, cat("mean sup ", means[0], " / ", means[1], " / ", means[2], " (ratios ", r1, ", ", r2,
                  "; sqrt(s) mean = ", means[0] * 10.0, ", ", means[1] * 20.0, ", ", means[2] * 40.0,
                  " vs Kolmogorov ", kolmogorov, "), ", rows, " rows dominated, ", informative,
                  " with a non-vacuous bound", detail)};
}

Outcome cauchy() {
  FieldSpec spec;
  spec.marginal = Marginal::uniform(0.0, 1.0);
  const std::vector<Coord> ns{50, 100, 200, 400};
  const auto entries = reference_ids(spec, 1, 0, ns, 200, 4242, workers());
  bool ok = true;
  std::string detail;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& e = entries[i];
    ok = ok && e.within;
    detail += cat(" n=", e.n, ": gap ", e.gap, " <= ", e.bound, " + ", e.band, ";");
  }
  return {ok, detail};
}

Outcome reduction() {
  std::size_t bad_error = 0, bad_prob = 0, count = 0;
  for (std::uint64_t a = 5; a <= 1000; ++a) {
    const std::uint64_t n = a * a;
    const double rn = std::sqrt(static_cast<double>(n));
    ++count;
    if (!(thm2_error_bound(3, n, 0, 2).total <= 901.0 / (rn - 1.0))) ++bad_error;
    if (!(thm2_probability(3, n, 2.0, 2).total >= 1.0 - 2.0 * std::exp(-std::sqrt(rn - 1.0) / theorem1_K()))) ++bad_prob;
  }
  return {bad_error == 0 && bad_prob == 0,
          cat(count, " perfect squares in [25, 1e6], ", bad_error, " error-bound and ", bad_prob, " probability failures")};
}

Outcome determinism() {
  auto run = [](std::vector<std::string> args, unsigned w) {
    args.push_back("--workers");
    args.push_back(std::to_string(w));
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return std::make_pair(code, out.str());
  };
  const std::vector<std::vector<std::string>> commands{
      {"concentrate", "--d", "1", "--m", "3", "--r", "1", "--s", "200", "--replicas", "300", "--kappa", "0.02,0.05,0.1",
       "--seed", "9"},
      {"decompose", "--d", "2", "--n", "24", "--m", "5", "--r", "1", "--samples", "20", "--seed", "3", "--marginal",
       "bernoulli"},
      {"reference", "--d", "1", "--ns", "20,40,80", "--samples", "40", "--seed", "5"},
  };
  bool ok = true;
  std::string detail;
  for (const auto& cmd : commands) {
    const auto base = run(cmd, 1);
    bool same = base.first == 0;
    for (unsigned w : {4u, 16u}) same = same && run(cmd, w) == base;
    ok = ok && same;
    detail += cat(" ", cmd.front(), (same ? " identical;" : " DIFFERS;"));
  }
  return {ok, cat("workers 1/4/16:", detail)};
}

}  // namespace

int main() {
  ValidationOptions opts;
  opts.workers = workers();

  const std::vector<Criterion> criteria{
      {"constants", 1.0, constants},
      {"deterministic geometric inequality", 600.0, geometric},
      {"lattice and operator properties", 60.0, [&] { return suites({"properties", "geometry"}, opts); }},
      {"bracketing", 60.0, [&] { return suites({"brackets"}, opts); }},
      {"Orlicz norms", 60.0, [&] { return suites({"orlicz"}, opts); }},
      {"Bernstein/Massart domination", 120.0, [&] { return suites({"bernstein", "massart"}, opts); }},
      {"concentration experiment", 600.0, concentration},
      {"Cauchy behaviour of the expectation", 300.0, cauchy},
      {"reduction sweep", 1.0, reduction},
      {"determinism", 600.0, determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, cat("exception: ", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.passed && in_time;
    all = all && pass;
    std::printf("[%s] %2zu %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", i + 1, c.name.c_str(),
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", over limit");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
