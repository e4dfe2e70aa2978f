#pragma once

#include <span>
#include <string>

namespace ids {

enum class OrliczFamily {
  power,  // x^p
  psi,    // e^{x^p} / M
  Psi,    // e^{x^p} - 1
};

struct OrliczSpec {
  OrliczFamily family = OrliczFamily::psi;
  double p = 1.0;
  double M = 2.0;

  static OrliczSpec power(double p);
  static OrliczSpec psi(double p, double M);
  static OrliczSpec Psi(double p);

  double operator()(double x) const;
  std::string tag() const;
};

// inf{C > 0 : mean Phi(|X|/C) <= 1}; infinity when nothing below the search
// ceiling satisfies the constraint.
double orlicz_norm(std::span<const double> xs, const OrliczSpec& spec, double rel_tol = 1e-8);

// mean Phi(|X|/C)
double orlicz_mean(std::span<const double> xs, const OrliczSpec& spec, double C);

struct TailCheck {
  std::size_t violations = 0;
  std::size_t grid_points = 0;
};

// Compares the empirical tail P(|X| >= y) with 1/Phi(y/D) at up to
// `grid` sample order statistics; a violation is a Wilson 99% lower end above
// the bound.
TailCheck orlicz_tail_check(std::span<const double> xs, const OrliczSpec& spec, double D, std::size_t grid = 200);

// Norm bound for tails P(|X| >= y) <= B e^{-C y^p} under psi_{p,M}.
double orlicz_tail_norm_bound(double B, double C, double M, double p);

}  // namespace ids
