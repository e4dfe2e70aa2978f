#include "report.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace ids::cli {

std::string num(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no infinities; edges at +-inf are written as strings.
Json finite_or_tag(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

}  // namespace

Json to_json(const StepFunction& f) {
  Json j;
  j["base"] = f.base();
  j["breakpoints"] = f.breakpoints();
  j["values"] = f.values();
  return j;
}

StepFunction step_function_from_json(const Json& j) {
  return StepFunction(j.at("base").get<double>(), j.at("breakpoints").get<std::vector<double>>(),
                      j.at("values").get<std::vector<double>>());
}

void write_csv(std::ostream& os, const StepFunction& f) {
  os << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) os << num(f.breakpoints()[i]) << ',' << num(f.values()[i]) << '\n';
}

Json to_json(const BoundReport& b) {
  Json j;
  j["name"] = b.name;
  Json terms = Json::object();
  for (const auto& [k, v] : b.terms) terms[k] = finite_or_tag(v);
  j["terms"] = terms;
  j["total"] = finite_or_tag(b.total);
  Json conds = Json::object();
  for (const auto& [k, v] : b.side_conditions) conds[k] = v;
  j["side_conditions"] = conds;
  j["valid"] = b.valid;
  j["vacuous"] = b.vacuous;
  return j;
}

void print_table(std::ostream& os, const BoundReport& b) {
  std::size_t width = 5;
  for (const auto& t : b.terms) width = std::max(width, t.first.size());
  for (const auto& c : b.side_conditions) width = std::max(width, c.first.size());
  os << b.name << '\n';
  for (const auto& [k, v] : b.terms) os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << num(v) << '\n';
  os << "  " << std::left << std::setw(static_cast<int>(width)) << "total" << "  " << num(b.total) << '\n';
  for (const auto& [k, v] : b.side_conditions) {
    os << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  " << (v ? "holds" : "fails") << '\n';
  }
  os << "  valid " << (b.valid ? "yes" : "no") << ", vacuous " << (b.vacuous ? "yes" : "no") << '\n';
}

Json to_json(const Marginal& m) {
  Json j;
  j["marginal"] = m.tag();
  switch (m.kind) {
    case MarginalKind::uniform:
      j["a"] = m.a;
      j["b"] = m.b;
      break;
    case MarginalKind::bernoulli:
      j["p"] = m.p;
      j["v0"] = m.v0;
      j["v1"] = m.v1;
      break;
    case MarginalKind::discrete:
      j["atoms"] = m.atoms;
      j["weights"] = m.weights;
      break;
  }
  return j;
}

Json to_json(const FieldSpec& spec) {
  Json j = to_json(spec.marginal);
  j["rho"] = spec.correlation_radius;
  return j;
}

void write_csv(std::ostream& os, const ConcentrationTable& table) {
  os << "kappa,freq,wilson_lo,wilson_hi,cor59,cor511,s,R\n";
  for (const auto& r : table.rows) {
    os << num(r.kappa) << ',' << num(r.freq) << ',' << num(r.wilson_lo) << ',' << num(r.wilson_hi) << ','
       << num(r.cor59) << ',' << num(r.cor511) << ',' << r.s << ',' << r.replicas << '\n';
  }
}

Json to_json(const ConcentrationTable& table) {
  Json j;
  j["mean_sup"] = table.mean_sup;
  j["reference_band"] = table.reference_band;
  j["reference_samples"] = table.reference_samples;
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json row;
    row["kappa"] = r.kappa;
    row["exceedances"] = r.exceedances;
    row["freq"] = r.freq;
    row["wilson_lo"] = r.wilson_lo;
    row["wilson_hi"] = r.wilson_hi;
    row["cor59"] = r.cor59;
    row["cor511"] = std::isnan(r.cor511) ? Json(nullptr) : Json(r.cor511);
    row["s"] = r.s;
    row["R"] = r.replicas;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["sup_norms"] = table.sup_norms;
  return j;
}

Json to_json(const BracketingCover& cover, const BracketStats& stats) {
  Json j;
  j["level"] = cover.level;
  j["grid_size"] = cover.grid_size();
  j["bracket_count"] = cover.bracket_count();
  j["size_bound"] = std::ldexp(1.0, -cover.level);
  Json edges = Json::array();
  for (double e : stats.edges) edges.push_back(finite_or_tag(e));
  j["edges"] = edges;
  j["size"] = stats.size;
  j["size_stderr"] = stats.size_stderr;
  j["atom"] = stats.atom;
  j["monotone"] = stats.monotone;
  j["samples"] = stats.samples;
  return j;
}

}  // namespace ids::cli
