#include "ids/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "ids/errors.hpp"

namespace ids {

StepFunction::StepFunction(double base, std::vector<double> breakpoints, std::vector<double> values)
    : base_(base), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  require(breakpoints_.size() == values_.size(), "step function: breakpoints/values length mismatch");
  require(std::isfinite(base_), "step function: base must be finite");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    require(std::isfinite(breakpoints_[i]) && std::isfinite(values_[i]),
            "step function: breakpoints and values must be finite");
    if (i > 0) require(breakpoints_[i - 1] < breakpoints_[i], "step function: breakpoints must increase strictly");
    const double prev = i == 0 ? base_ : values_[i - 1];
    if (values_[i] < prev) monotone_ = false;
  }
}

double StepFunction::operator()(double x) const {
  const auto k = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
  return k == 0 ? base_ : values_[static_cast<std::size_t>(k - 1)];
}

double StepFunction::left_limit(double x) const {
  const auto k = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
  return k == 0 ? base_ : values_[static_cast<std::size_t>(k - 1)];
}

StepFunction counting_function(std::span<const double> sorted_values, double normalizer) {
  require(normalizer > 0.0, "counting function: normalizer must be positive");
  std::vector<double> bps;
  std::vector<double> vals;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    if (i > 0) require(sorted_values[i - 1] <= sorted_values[i], "counting function: input must be sorted");
    if (i + 1 < sorted_values.size() && sorted_values[i + 1] == sorted_values[i]) continue;
    bps.push_back(sorted_values[i]);
    vals.push_back(static_cast<double>(i + 1) / normalizer);
  }
  return StepFunction(0.0, std::move(bps), std::move(vals));
}

}  // namespace ids
