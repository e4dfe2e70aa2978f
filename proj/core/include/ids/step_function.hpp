#pragma once

#include <span>
#include <vector>

namespace ids {

// Right-continuous step function: `base` on (-inf, b_0), values[i] on
// [b_i, b_{i+1}), values.back() on [b_last, inf).
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(double base, std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double c) { return StepFunction(c, {}, {}); }
  // 0 below x0, `height` from x0 on.
  static StepFunction step(double x0, double height = 1.0) { return StepFunction(0.0, {x0}, {height}); }

  double base() const noexcept { return base_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return breakpoints_.size(); }
  bool monotone() const noexcept { return monotone_; }

  double operator()(double x) const;
  double left_limit(double x) const;
  double upper_limit() const noexcept { return values_.empty() ? base_ : values_.back(); }
  double lower_limit() const noexcept { return base_; }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  double base_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  bool monotone_ = true;
};

// Step function counting sorted reals: value after the k-th distinct value is
// (number of entries <= it) / normalizer. Exact float equality merges ties.
StepFunction counting_function(std::span<const double> sorted_values, double normalizer);

}  // namespace ids
