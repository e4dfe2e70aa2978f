#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ids/lattice.hpp"
#include "ids/random_field.hpp"

namespace ids {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, bool passed, std::string detail = {});
};

struct ValidationOptions {
  std::uint64_t seed = 20240601;
  unsigned workers = 1;
  std::size_t instances = 1000;       // random small instances for the property suite
  std::size_t replicas = 100000;      // Bernstein / Massart replicas
  std::size_t phi_samples = 10000;    // empirical Phi for the bracketing suite
  std::size_t verify_samples = 100000;
  int q_max = 5;
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const ValidationOptions& opts);
std::vector<SuiteReport> run_validation(const std::vector<std::string>& names, const ValidationOptions& opts);

// One sample of the deterministic decomposition inequality.
struct DecompositionRow {
  std::uint64_t seed;
  double lhs;
  double decomposition;
  double explicit_bound;  // NaN unless n > 4m
  bool pass;
};

DecompositionRow decomposition_sample(const FieldSpec& spec, int d, Coord n, Coord m, Coord r);

// Exact bracket sizes for the single-site uniform model, where
// Phi(x) = clamp(x - 2, 0, 1): x_j = 2 + j 2^{-2q}.
std::vector<double> exact_uniform_grid(int q);

}  // namespace ids
