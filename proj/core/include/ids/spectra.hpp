#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ids/lattice.hpp"
#include "ids/operator.hpp"
#include "ids/random_field.hpp"
#include "ids/step_function.hpp"

namespace ids {

// Largest non-tridiagonal matrix we are willing to diagonalize.
inline constexpr std::size_t kMaxDenseSize = 10000;

// All eigenvalues in ascending order. Tridiagonal operators use a
// root-free QR sweep, banded ones a divide and conquer band solver, the rest
// a dense one.
std::vector<double> eigenvalues(const RestrictedOperator& h);

// #{eigenvalues <= x}. Tridiagonal operators go through Sturm inertia, the
// rest through a full eigensolve.
std::size_t count_below(const RestrictedOperator& h, double x);
std::size_t count_below(std::span<const double> sorted_eigenvalues, double x);
// Inertia count for the symmetric tridiagonal matrix (diag, off).
std::size_t sturm_count(std::span<const double> diag, std::span<const double> off, double x);

StepFunction evcf(const RestrictedOperator& h);
StepFunction evcf(std::span<const Site> sorted_sites, const PotentialSample& omega);
StepFunction normalized_evcf(std::span<const Site> sorted_sites, const PotentialSample& omega,
                             double normalizer);
StepFunction normalized_evcf(const Cube& cube, const PotentialSample& omega, double normalizer);

// sup over the real line of |f - g|.
double sup_norm_distance(const StepFunction& f, const StepFunction& g);

// Pointwise convex combination. The result only depends on the inputs and
// their order, not on how breakpoints interleave.
StepFunction average(std::span<const StepFunction> fs, std::span<const double> weights);
StepFunction average(std::span<const StepFunction> fs);

}  // namespace ids
