#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "ids/bounds.hpp"
#include "ids/empirical.hpp"
#include "ids/errors.hpp"
#include "ids/operator.hpp"
#include "ids/parallel.hpp"
#include "ids/random_field.hpp"
#include "ids/spectra.hpp"
#include "ids/validation.hpp"
#include "report.hpp"

namespace ids::cli {
namespace {

struct FieldConfig {
  std::string marginal = "uniform";
  double a = 0.0, b = 1.0;
  double p = 0.5, v0 = 0.0, v1 = 1.0;
  std::vector<double> atoms, weights;
  Coord rho = 0;

  FieldSpec build() const {
    FieldSpec spec;
    if (marginal == "uniform") {
      spec.marginal = Marginal::uniform(a, b);
    } else if (marginal == "bernoulli") {
      spec.marginal = Marginal::bernoulli(p, v0, v1);
    } else if (marginal == "discrete") {
      spec.marginal = Marginal::discrete(atoms, weights);
    } else {
      throw PreconditionError("unknown marginal '" + marginal + "'");
    }
    require(rho >= 0, "rho must be non-negative");
    spec.correlation_radius = rho;
    return spec;
  }
};

// Zero for samples/replicas means "the command's default".
struct RunConfig {
  int d = 1;
  Coord n = 100, m = 10, r = 0;
  int k = 0;
  double M = 2.0, alpha = 0.1, beta = 0.1;
  std::vector<double> kappa{0.05, 0.1, 0.2};
  std::size_t samples = 0, replicas = 0, s = 100;
  std::uint64_t seed = 1, reference_seed = 0;
  std::size_t reference_samples = 0;
  std::vector<Coord> ns{50, 100, 200, 400};
  int q = 5;
  std::size_t verify_samples = 100000, instances = 1000;
  std::vector<std::string> reports, suite;
  FieldConfig field;
  std::string out, json, dump_matrix;
  unsigned workers = 1;
};

void load_field(const Json& j, FieldConfig& f) {
  for (const auto& [key, v] : j.items()) {
    if (key == "marginal") f.marginal = v.get<std::string>();
    else if (key == "a") f.a = v.get<double>();
    else if (key == "b") f.b = v.get<double>();
    else if (key == "p") f.p = v.get<double>();
    else if (key == "v0") f.v0 = v.get<double>();
    else if (key == "v1") f.v1 = v.get<double>();
    else if (key == "atoms") f.atoms = v.get<std::vector<double>>();
    else if (key == "weights") f.weights = v.get<std::vector<double>>();
    else if (key == "rho") f.rho = v.get<Coord>();
    else throw PreconditionError("unknown field key '" + key + "'");
  }
}

void load_config(const Json& j, RunConfig& c) {
  require(j.is_object(), "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "d") c.d = v.get<int>();
    else if (key == "n") c.n = v.get<Coord>();
    else if (key == "m") c.m = v.get<Coord>();
    else if (key == "r") c.r = v.get<Coord>();
    else if (key == "k") c.k = v.get<int>();
    else if (key == "M") c.M = v.get<double>();
    else if (key == "alpha") c.alpha = v.get<double>();
    else if (key == "beta") c.beta = v.get<double>();
    else if (key == "kappa") c.kappa = v.get<std::vector<double>>();
    else if (key == "samples") c.samples = v.get<std::size_t>();
    else if (key == "replicas") c.replicas = v.get<std::size_t>();
    else if (key == "s") c.s = v.get<std::size_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "reference_seed") c.reference_seed = v.get<std::uint64_t>();
    else if (key == "reference_samples") c.reference_samples = v.get<std::size_t>();
    else if (key == "ns") c.ns = v.get<std::vector<Coord>>();
    else if (key == "q") c.q = v.get<int>();
    else if (key == "verify_samples") c.verify_samples = v.get<std::size_t>();
    else if (key == "instances") c.instances = v.get<std::size_t>();
    else if (key == "reports") c.reports = v.get<std::vector<std::string>>();
    else if (key == "suite") c.suite = v.get<std::vector<std::string>>();
    else if (key == "field") load_field(v, c.field);
    else if (key == "out") c.out = v.get<std::string>();
    else if (key == "json") c.json = v.get<std::string>();
    else if (key == "dump_matrix") c.dump_matrix = v.get<std::string>();
    else if (key == "workers") c.workers = v.get<unsigned>();
    else throw PreconditionError("unknown config key '" + key + "'");
  }
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

// Everything except the worker count, which must not change any output.
Json echo(const std::string& command, const RunConfig& c) {
  Json j;
  j["command"] = command;
  auto put = [&](const char* key, const Json& v) { j[key] = v; };
  auto field = [&] {
    Json f = to_json(c.field.build());
    put("field", f);
  };
  if (command == "bounds") {
    put("reports", c.reports);
    put("d", c.d);
    put("n", c.n);
    put("m", c.m);
    put("r", c.r);
    put("k", c.k);
    put("M", c.M);
    put("alpha", c.alpha);
    put("beta", c.beta);
    put("s", c.s);
    put("kappa", c.kappa);
  } else if (command == "decompose") {
    put("d", c.d);
    put("n", c.n);
    put("m", c.m);
    put("r", c.r);
    put("samples", c.samples);
    put("seed", c.seed);
    field();
  } else if (command == "concentrate") {
    put("d", c.d);
    put("m", c.m);
    put("r", c.r);
    put("s", c.s);
    put("kappa", c.kappa);
    put("replicas", c.replicas);
    put("seed", c.seed);
    put("reference_seed", c.reference_seed);
    put("reference_samples", c.reference_samples);
    put("M", c.M);
    field();
  } else if (command == "brackets") {
    put("d", c.d);
    put("m", c.m);
    put("r", c.r);
    put("samples", c.samples);
    put("q", c.q);
    put("verify_samples", c.verify_samples);
    put("seed", c.seed);
    field();
  } else if (command == "reference") {
    put("d", c.d);
    put("r", c.r);
    put("ns", c.ns);
    put("samples", c.samples);
    put("seed", c.seed);
    field();
  } else if (command == "region") {
    put("d", c.d);
    put("n", c.n);
    put("r", c.r);
    put("alpha", c.alpha);
    put("beta", c.beta);
    put("seed", c.seed);
    field();
  } else if (command == "validate") {
    put("suite", c.suite);
    put("seed", c.seed);
    put("instances", c.instances);
    put("replicas", c.replicas);
    put("samples", c.samples);
    put("verify_samples", c.verify_samples);
    put("q", c.q);
  }
  return j;
}

void resolve_defaults(const std::string& command, RunConfig& c) {
  if (command == "decompose" && c.samples == 0) c.samples = 100;
  if (command == "reference" && c.samples == 0) c.samples = 200;
  if ((command == "brackets" || command == "validate") && c.samples == 0) c.samples = 10000;
  if (command == "concentrate" && c.replicas == 0) c.replicas = 200;
  if (command == "validate" && c.replicas == 0) c.replicas = 100000;
  if (command == "bounds" && c.reports.empty()) c.reports = {"constants"};
  if (command == "concentrate") {
    ConcentrationConfig cc;
    cc.seed = c.seed;
    cc.reference_seed = c.reference_seed;
    cc.reference_samples = c.reference_samples;
    cc.replicas = c.replicas;
    cc.s = c.s;
    c.reference_seed = resolved_reference_seed(cc);
    c.reference_samples = resolved_reference_samples(cc);
  }
}

void write_header(std::ostream& o, const Json& config) { o << "# config " << config.dump() << '\n'; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream f(path);
  require(static_cast<bool>(f), "cannot write " + path);
  f << j.dump(2) << '\n';
}

int positive_n(const RunConfig& c) {
  require(c.n >= 1, "n must be positive");
  require(c.d >= 1 && c.d <= kMaxDim, "d out of range");
  return c.d;
}

void check_solver_size(int d, Coord n) {
  const auto size = ipow(static_cast<std::uint64_t>(n), d);
  if (d > 1 && size > kMaxDenseSize) {
    throw SolverLimitError("operator of size " + std::to_string(size) + " exceeds the solver limit of " +
                               std::to_string(kMaxDenseSize),
                           size);
  }
}

// ------------------------------------------------------------------ bounds

BoundReport scalar_report(std::string name, std::vector<std::pair<std::string, double>> terms, double total,
                          bool vacuous) {
  BoundReport b;
  b.name = std::move(name);
  b.terms = std::move(terms);
  b.total = total;
  b.vacuous = vacuous;
  return b;
}

std::vector<BoundReport> make_reports(const std::string& which, const RunConfig& c) {
  std::vector<BoundReport> out;
  const auto un = [&] {
    positive_n(c);
    return static_cast<std::uint64_t>(c.n);
  };
  if (which == "constants") {
    const SeriesValue S = chaining_series_certified();
    out.push_back(scalar_report("constants",
                                {{"S", S.value},
                                 {"S tail bound", S.tail_bound},
                                 {"S terms", S.terms},
                                 {"K_M", k_M(c.M)},
                                 {"K_M cap", k_M_cap(c.M)},
                                 {"K_2", k_2()},
                                 {"K", theorem1_K()},
                                 {"C(d)", theorem1_C(c.d)}},
                                S.value, false));
  } else if (which == "geometric") {
    out.push_back(geometric_bound(c.d, c.n, c.m, c.r));
  } else if (which == "decomposition") {
    out.push_back(decomposition_bound(c.d, c.n, c.m, c.r));
  } else if (which == "expectation") {
    const double v = expectation_convergence_bound(c.d, c.n, c.r);
    out.push_back(scalar_report("expectation convergence", {}, v, v >= 1.0));
  } else if (which == "thm1") {
    out.push_back(thm1_min_side(c.d, c.alpha, c.beta));
  } else if (which == "thm2") {
    const int k = c.k > 0 ? c.k : dimension_k(c.d, Theorem::thm2);
    out.push_back(thm2_error_bound(c.d, un(), c.r, k));
    out.push_back(thm2_probability(c.d, un(), c.M, k));
  } else if (which == "thm3") {
    const int k = c.k > 0 ? c.k : dimension_k(c.d, Theorem::thm3);
    out.push_back(thm3_probability(c.d, un(), c.r, k));
  } else if (which == "cor59") {
    for (double kappa : c.kappa) {
      const double p = cor59_probability(static_cast<double>(c.s), kappa, c.M);
      out.push_back(scalar_report("cor59 kappa=" + num(kappa),
                                  {{"s", static_cast<double>(c.s)}, {"kappa", kappa}, {"M", c.M}, {"K_M", k_M(c.M)}}, p,
                                  p >= 1.0));
    }
  } else if (which == "cor511") {
    for (double kappa : c.kappa) {
      BoundReport b = cor511_probability(static_cast<double>(c.s), kappa);
      b.name += " kappa=" + num(kappa);
      out.push_back(std::move(b));
    }
  } else {
    throw PreconditionError("unknown report '" + which + "'");
  }
  return out;
}

int cmd_bounds(const RunConfig& c, const Json& config, std::ostream& o, std::ostream& err) {
  write_header(o, config);
  Json reports = Json::array();
  bool first = true;
  for (const auto& which : c.reports) {
    for (const auto& b : make_reports(which, c)) {
      if (!first) o << '\n';
      first = false;
      print_table(o, b);
      if (!b.valid) err << "warning: " << b.name << ": side conditions do not hold; the bound does not apply\n";
      reports.push_back(to_json(b));
    }
  }
  if (!c.json.empty()) write_json_file(c.json, Json{{"config", config}, {"reports", reports}});
  return exit_ok;
}

// -------------------------------------------------------------- decompose

int cmd_decompose(const RunConfig& c, const Json& config, std::ostream& o, std::ostream& err) {
  decomposition_bound(c.d, c.n, c.m, c.r);  // validates (d, n, m, r)
  check_solver_size(c.d, c.n);
  const FieldSpec spec = c.field.build();
  auto seeded = [&](std::size_t i) {
    FieldSpec local = spec;
    local.seed = derive_seed(c.seed, stream::sample, i);
    return local;
  };
  if (!c.dump_matrix.empty()) {
    std::ofstream f(c.dump_matrix);
    require(static_cast<bool>(f), "cannot write " + c.dump_matrix);
    const Cube cube(c.d, c.n);
    write_triplets(f, assemble(cube, sample(seeded(0), cube)));
  }
  const auto rows = parallel_map(c.samples, c.workers,
                                 [&](std::size_t i) { return decomposition_sample(seeded(i), c.d, c.n, c.m, c.r); });
  write_header(o, config);
  o << "seed,lhs,decomposition,explicit,pass\n";
  std::size_t failures = 0;
  for (const auto& row : rows) {
    o << row.seed << ',' << num(row.lhs) << ',' << num(row.decomposition) << ',' << num(row.explicit_bound) << ','
      << (row.pass ? "true" : "false") << '\n';
    failures += !row.pass;
  }
  if (failures > 0) {
    err << "decompose: " << failures << " of " << rows.size() << " samples violate the bound\n";
    return exit_property_violation;
  }
  return exit_ok;
}

// ------------------------------------------------------------ concentrate

int cmd_concentrate(const RunConfig& c, const Json& config, std::ostream& o, std::ostream&) {
  ConcentrationConfig cc;
  cc.spec = c.field.build();
  cc.d = c.d;
  cc.m = c.m;
  cc.r = c.r;
  cc.s = c.s;
  cc.kappas = c.kappa;
  cc.replicas = c.replicas;
  cc.seed = c.seed;
  cc.reference_seed = c.reference_seed;
  cc.reference_samples = c.reference_samples;
  cc.M = c.M;
  cc.workers = c.workers;
  require(c.d >= 1 && c.d <= kMaxDim, "d out of range");
  check_solver_size(c.d, c.m);
  const ConcentrationTable table = concentration_experiment(cc);
  write_header(o, config);
  write_csv(o, table);
  if (!c.json.empty()) {
    Json j{{"config", config}};
    j.update(to_json(table));
    write_json_file(c.json, j);
  }
  return exit_ok;
}

// --------------------------------------------------------------- brackets

int cmd_brackets(const RunConfig& c, const Json& config, std::ostream& o, std::ostream& err) {
  require(c.q >= 1, "q must be at least 1");
  require(c.d >= 1 && c.d <= kMaxDim, "d out of range");
  check_solver_size(c.d, c.m);
  const FieldSpec spec = c.field.build();
  const EmpiricalPhi phi = empirical_phi(spec, c.d, c.m, c.r, c.samples, derive_seed(c.seed, stream::phi, 0), c.workers);
  const auto covers = build_bracketing(phi, c.q);
  const auto stats = verify_bracketing(covers, phi, spec, c.verify_samples, derive_seed(c.seed, stream::verify, 0), c.workers);
  Json levels = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    levels.push_back(to_json(covers[i], stats[i]));
    ok = ok && stats[i].monotone && covers[i].bracket_count() <= (std::size_t{1} << (2 * covers[i].level));
  }
  Json j{{"config", config}, {"phi_samples", phi.sample_count}, {"upper", phi.upper()}, {"levels", levels}};
  o << j.dump(2) << '\n';
  if (!c.json.empty()) write_json_file(c.json, j);
  if (!ok) {
    err << "brackets: monotonicity or bracket count violated\n";
    return exit_property_violation;
  }
  return exit_ok;
}

// -------------------------------------------------------------- reference

int cmd_reference(const RunConfig& c, const Json& config, std::ostream& o, std::ostream& err) {
  require(c.d >= 1 && c.d <= kMaxDim, "d out of range");
  for (Coord n : c.ns) check_solver_size(c.d, n);
  const auto entries = reference_ids(c.field.build(), c.d, c.r, c.ns, c.samples, c.seed, c.workers);
  write_header(o, config);
  o << "n,gap,bound,band,within\n";
  bool ok = true;
  Json means = Json::array();
  for (const auto& e : entries) {
    o << e.n << ',' << num(e.gap) << ',' << num(e.bound) << ',' << num(e.band) << ',' << (e.within ? "true" : "false")
      << '\n';
    ok = ok && e.within;
    means.push_back(Json{{"n", e.n}, {"mean", to_json(e.mean)}, {"stderr", to_json(e.stderr_)}});
  }
  if (!c.json.empty()) write_json_file(c.json, Json{{"config", config}, {"levels", means}});
  if (!ok) {
    err << "reference: a consecutive gap exceeds bound plus Monte Carlo band\n";
    return exit_property_violation;
  }
  return exit_ok;
}

// ----------------------------------------------------------------- region

int cmd_region(const RunConfig& c, const Json& config, std::ostream& o, std::ostream&) {
  positive_n(c);
  check_solver_size(c.d, c.n);
  FieldSpec spec = c.field.build();
  spec.seed = derive_seed(c.seed, stream::sample, 0);
  const Cube cube(c.d, c.n);
  const ConfidenceRegion region = confidence_region(sample(spec, cube), c.n, c.d, c.r, c.beta, c.alpha);
  write_header(o, config);
  o << "# certified " << (region.certified ? "true" : "false") << ", required_L " << num(region.required_L) << '\n';
  o << "x,measured,lower,upper\n";
  const auto& xs = region.measured.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    o << num(xs[i]) << ',' << num(region.measured.values()[i]) << ',' << num(region.lower.values()[i]) << ','
      << num(region.upper.values()[i]) << '\n';
  }
  if (!c.json.empty()) {
    write_json_file(c.json, Json{{"config", config},
                                 {"certified", region.certified},
                                 {"required_L", region.required_L},
                                 {"measured", to_json(region.measured)},
                                 {"lower", to_json(region.lower)},
                                 {"upper", to_json(region.upper)}});
  }
  return exit_ok;
}

// --------------------------------------------------------------- validate

int cmd_validate(const RunConfig& c, const Json& config, std::ostream& o, std::ostream& err) {
  ValidationOptions opts;
  opts.seed = c.seed;
  opts.workers = c.workers;
  opts.instances = c.instances;
  opts.replicas = c.replicas;
  opts.phi_samples = c.samples;
  opts.verify_samples = c.verify_samples;
  opts.q_max = c.q;
  bool all = true;
  Json suites = Json::array();
  for (const auto& name : c.suite.empty() ? suite_names() : c.suite) {
    const SuiteReport rep = run_suite(name, opts);
    Json checks = Json::array();
    for (const auto& ch : rep.checks) {
      err << (ch.passed ? "PASS " : "FAIL ") << rep.name << ": " << ch.name;
      if (!ch.detail.empty()) err << " (" << ch.detail << ')';
      err << '\n';
      checks.push_back(Json{{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    }
    all = all && rep.passed();
    suites.push_back(Json{{"name", rep.name}, {"passed", rep.passed()}, {"seconds", rep.seconds}, {"checks", checks}});
  }
  const Json j{{"config", config}, {"passed", all}, {"suites", suites}};
  o << j.dump(2) << '\n';
  if (!c.json.empty()) write_json_file(c.json, j);
  return all ? exit_ok : exit_property_violation;
}

// ------------------------------------------------------------------ setup

void add_field_options(CLI::App* sub, FieldConfig& f) {
  sub->add_option("--marginal", f.marginal, "uniform, bernoulli or discrete");
  sub->add_option("--a", f.a, "uniform lower end");
  sub->add_option("--b", f.b, "uniform upper end");
  sub->add_option("--p", f.p, "Bernoulli probability of v1");
  sub->add_option("--v0", f.v0);
  sub->add_option("--v1", f.v1);
  sub->add_option("--atoms", f.atoms)->delimiter(',');
  sub->add_option("--weights", f.weights)->delimiter(',');
  sub->add_option("--rho", f.rho, "correlation radius of the moving-average field");
}

void add_io_options(CLI::App* sub, RunConfig& c, std::string& config_path) {
  sub->add_option("--config", config_path, "JSON config; flags override its values");
  sub->add_option("--workers", c.workers, "worker threads (default: $IDS_WORKERS or hardware)");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--json", c.json, "additional JSON report");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.workers = default_workers();
  try {
    if (const auto path = find_config_path(args); !path.empty()) {
      std::ifstream f(path);
      require(static_cast<bool>(f), "cannot read config " + path);
      load_config(Json::parse(f), c);
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_config;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return exit_invalid_config;
  }

  CLI::App app{"Concentration bounds and Monte Carlo checks for the integrated density of states", "idsc"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, bool> report_flags;

  auto* bounds = app.add_subcommand("bounds", "evaluate explicit bounds");
  for (const char* name : {"constants", "geometric", "decomposition", "expectation", "thm1", "thm2", "thm3", "cor59", "cor511"}) {
    bounds->add_flag(std::string("--") + name, report_flags[name]);
  }
  auto* decompose = app.add_subcommand("decompose", "check the deterministic decomposition inequality sample-wise");
  auto* concentrate = app.add_subcommand("concentrate", "exceedance frequencies of the block-average sup-norm");
  auto* brackets = app.add_subcommand("brackets", "nested bracketing covers from an empirical Phi");
  auto* reference = app.add_subcommand("reference", "Monte Carlo expectation of the evcf for growing cubes");
  auto* region = app.add_subcommand("region", "confidence band around a measured evcf");
  auto* validate = app.add_subcommand("validate", "run the property and validation suites");

  for (auto* sub : {bounds, decompose, concentrate, brackets, reference, region, validate}) add_io_options(sub, c, config_path);
  for (auto* sub : {bounds, decompose, concentrate, brackets, reference, region}) sub->add_option("--d", c.d, "dimension");
  for (auto* sub : {decompose, concentrate, brackets, reference, region}) add_field_options(sub, c.field);
  for (auto* sub : {bounds, decompose, region}) sub->add_option("--n", c.n, "cube side");
  for (auto* sub : {bounds, decompose, concentrate, brackets}) sub->add_option("--m", c.m, "block side");
  for (auto* sub : {bounds, decompose, concentrate, brackets, reference, region}) sub->add_option("--r", c.r, "boundary radius");
  for (auto* sub : {decompose, concentrate, brackets, reference, region, validate}) sub->add_option("--seed", c.seed);
  for (auto* sub : {bounds, concentrate}) {
    sub->add_option("--M", c.M, "Orlicz parameter");
    sub->add_option("--kappa", c.kappa, "comma separated thresholds")->delimiter(',');
    sub->add_option("--s", c.s, "number of blocks");
  }
  for (auto* sub : {bounds, region}) {
    sub->add_option("--alpha", c.alpha);
    sub->add_option("--beta", c.beta);
  }
  bounds->add_option("--k", c.k, "root exponent (default: dimension dependent)");
  for (auto* sub : {decompose, brackets, reference, validate}) sub->add_option("--samples", c.samples);
  for (auto* sub : {concentrate, validate}) sub->add_option("--replicas,--R", c.replicas);
  for (auto* sub : {brackets, validate}) {
    sub->add_option("--q", c.q, "finest bracketing level");
    sub->add_option("--verify-samples", c.verify_samples);
  }
  decompose->add_option("--dump-matrix", c.dump_matrix, "write the first sample's operator as triplets");
  concentrate->add_option("--reference-seed", c.reference_seed);
  concentrate->add_option("--reference-samples", c.reference_samples);
  reference->add_option("--ns", c.ns, "comma separated cube sides")->delimiter(',');
  validate->add_option("--suite", c.suite, "suite to run (repeatable)");
  validate->add_option("--instances", c.instances);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_config;
  }
  for (const auto& [name, on] : report_flags) {
    if (on && std::find(c.reports.begin(), c.reports.end(), name) == c.reports.end()) c.reports.push_back(name);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    require(c.workers >= 1, "workers must be positive");
    resolve_defaults(command, c);
    const Json config = echo(command, c);
    std::ofstream file;
    if (!c.out.empty()) {
      file.open(c.out);
      require(static_cast<bool>(file), "cannot write " + c.out);
    }
    std::ostream& o = c.out.empty() ? out : file;
    if (command == "bounds") return cmd_bounds(c, config, o, err);
    if (command == "decompose") return cmd_decompose(c, config, o, err);
    if (command == "concentrate") return cmd_concentrate(c, config, o, err);
    if (command == "brackets") return cmd_brackets(c, config, o, err);
    if (command == "reference") return cmd_reference(c, config, o, err);
    if (command == "region") return cmd_region(c, config, o, err);
    return cmd_validate(c, config, o, err);
  } catch (const SolverLimitError& e) {
    err << "error: " << e.what() << '\n';
    return exit_solver_limit;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_config;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_error;
  }
}

}  // namespace ids::cli
