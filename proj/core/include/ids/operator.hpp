#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ids/lattice.hpp"
#include "ids/random_field.hpp"

namespace ids {

// H = -Laplacian + V compressed to a finite set: diagonal 2d + omega_x,
// -1 between nearest neighbours that both lie in the set.
// The off-diagonal part is kept as the strict upper triangle in CSR form.
class RestrictedOperator {
 public:
  RestrictedOperator(int dim, SiteSet sites, std::vector<double> diagonal,
                     std::vector<std::size_t> row_start, std::vector<std::uint32_t> cols);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return sites_.size(); }
  const SiteSet& sites() const noexcept { return sites_; }
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  const std::vector<std::size_t>& row_start() const noexcept { return row_start_; }
  const std::vector<std::uint32_t>& cols() const noexcept { return cols_; }
  std::size_t edge_count() const noexcept { return cols_.size(); }

  static constexpr double hopping = -1.0;

  // max |i - j| over stored entries
  std::size_t bandwidth() const;
  bool tridiagonal() const { return bandwidth() <= 1; }
  // Sub-diagonal of a tridiagonal operator (length size()-1, entries -1 or 0).
  std::vector<double> subdiagonal() const;
  // Column-major full matrix.
  std::vector<double> dense() const;
  // LAPACK upper band storage, leading dimension kd+1, column-major.
  std::vector<double> upper_band(std::size_t kd) const;

  double entry(std::size_t i, std::size_t j) const;

 private:
  int dim_;
  SiteSet sites_;
  std::vector<double> diagonal_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> cols_;
};

RestrictedOperator assemble(std::span<const Site> sorted_sites, const PotentialSample& omega);
RestrictedOperator assemble(const Cube& cube, const PotentialSample& omega);

// One "i j value" line per stored entry (1-based, both triangles), preceded
// by a "rows cols nnz" header.
void write_triplets(std::ostream& os, const RestrictedOperator& h);

}  // namespace ids
