#include "ids/operator.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "ids/errors.hpp"

namespace ids {

RestrictedOperator::RestrictedOperator(int dim, SiteSet sites, std::vector<double> diagonal,
                                       std::vector<std::size_t> row_start,
                                       std::vector<std::uint32_t> cols)
    : dim_(dim),
      sites_(std::move(sites)),
      diagonal_(std::move(diagonal)),
      row_start_(std::move(row_start)),
      cols_(std::move(cols)) {
  require(diagonal_.size() == sites_.size(), "operator: diagonal length mismatch");
  require(row_start_.size() == sites_.size() + 1, "operator: row_start length mismatch");
  require(row_start_.back() == cols_.size(), "operator: row_start/cols mismatch");
}

std::size_t RestrictedOperator::bandwidth() const {
  std::size_t bw = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) bw = std::max<std::size_t>(bw, cols_[k] - i);
  }
  return bw;
}

std::vector<double> RestrictedOperator::subdiagonal() const {
  require(tridiagonal(), "operator is not tridiagonal");
  std::vector<double> e(size() > 0 ? size() - 1 : 0, 0.0);
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    if (row_start_[i + 1] > row_start_[i]) e[i] = hopping;
  }
  return e;
}

std::vector<double> RestrictedOperator::dense() const {
  const std::size_t n = size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = diagonal_[i];
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      a[j * n + i] = hopping;
      a[i * n + j] = hopping;
    }
  }
  return a;
}

std::vector<double> RestrictedOperator::upper_band(std::size_t kd) const {
  require(kd >= bandwidth(), "upper_band: kd below the operator bandwidth");
  const std::size_t n = size();
  const std::size_t ld = kd + 1;
  std::vector<double> ab(ld * n, 0.0);
  // A(i,j) for i <= j lives at ab[kd + i - j + j*ld]
  for (std::size_t i = 0; i < n; ++i) {
    ab[kd + i * ld] = diagonal_[i];
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const std::size_t j = cols_[k];
      ab[kd + i - j + j * ld] = hopping;
    }
  }
  return ab;
}

double RestrictedOperator::entry(std::size_t i, std::size_t j) const {
  require(i < size() && j < size(), "operator entry out of range");
  if (i == j) return diagonal_[i];
  if (i > j) std::swap(i, j);
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]);
  return std::binary_search(first, last, static_cast<std::uint32_t>(j)) ? hopping : 0.0;
}

RestrictedOperator assemble(std::span<const Site> sorted_sites, const PotentialSample& omega) {
  require(!sorted_sites.empty(), "assemble: empty site set");
  require(is_normalized(sorted_sites), "assemble: site set must be sorted and distinct");
  require(sorted_sites.size() < std::numeric_limits<std::uint32_t>::max(), "assemble: site set too large");
  const int d = sorted_sites.front().dim();
  std::vector<double> diag = omega.values_on(sorted_sites);
  for (auto& v : diag) v += 2.0 * d;

  std::vector<std::size_t> row_start{0};
  std::vector<std::uint32_t> cols;
  row_start.reserve(sorted_sites.size() + 1);
  cols.reserve(sorted_sites.size() * static_cast<std::size_t>(d));
  for (const auto& x : sorted_sites) {
    const std::size_t before = cols.size();
    for (int axis = 0; axis < d; ++axis) {
      const Site y = x + Site::unit(d, axis);
      auto it = std::lower_bound(sorted_sites.begin(), sorted_sites.end(), y);
      if (it != sorted_sites.end() && *it == y) {
        cols.push_back(static_cast<std::uint32_t>(it - sorted_sites.begin()));
      }
    }
    std::sort(cols.begin() + static_cast<std::ptrdiff_t>(before), cols.end());
    row_start.push_back(cols.size());
  }
  return RestrictedOperator(d, SiteSet(sorted_sites.begin(), sorted_sites.end()), std::move(diag),
                            std::move(row_start), std::move(cols));
}

RestrictedOperator assemble(const Cube& cube, const PotentialSample& omega) {
  const SiteSet sites = cube.sites();
  return assemble(sites, omega);
}

void write_triplets(std::ostream& os, const RestrictedOperator& h) {
  const auto old_precision = os.precision(17);
  os << h.size() << ' ' << h.size() << ' ' << h.size() + 2 * h.edge_count() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << i + 1 << ' ' << i + 1 << ' ' << h.diagonal()[i] << '\n';
    for (std::size_t k = h.row_start()[i]; k < h.row_start()[i + 1]; ++k) {
      const std::size_t j = h.cols()[k];
      os << i + 1 << ' ' << j + 1 << ' ' << RestrictedOperator::hopping << '\n';
      os << j + 1 << ' ' << i + 1 << ' ' << RestrictedOperator::hopping << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace ids
