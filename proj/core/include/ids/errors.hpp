#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ids {

// A precondition of an operation does not hold (bad sizes, empty sets,
// parameters outside their admissible ranges).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested eigenproblem exceeds what the dense/banded solver accepts.
class SolverLimitError : public std::runtime_error {
 public:
  SolverLimitError(const std::string& what, std::size_t size)
      : std::runtime_error(what), size_(size) {}
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

// LAPACK reported a failure to converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t size)
      : std::runtime_error(what), size_(size) {}
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace ids
