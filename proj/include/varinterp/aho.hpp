#pragma once

// Closed forms of the first-order oscillator approximant
//   W_1 = Omega/4 + omega^2/(4 Omega) + a_1 alpha / Omega^2 (alpha = g/4).

#include <cmath>

#include "varinterp/errors.hpp"

namespace varinterp::aho {

/// a_1 from the leading strong coefficient: b_0 = (3/4) a_1^(1/3).
inline double a1_from_b0(double b0) { return std::pow(4.0 * b0 / 3.0, 3); }

/// Growth constant, extremum of b_0(c) = c/4 + a_1/c^2.
inline double growth_constant(double a1) { return 2.0 * std::cbrt(a1); }

/// Effective coupling r = 8 a_1 alpha = 2 a_1 g of the cubic Omega^3 - omega^2 Omega - r = 0.
inline double effective_coupling(double g, double a1) { return 2.0 * a1 * g; }

/// Branch point 2 omega^3 / (3 sqrt 3) of the effective coupling.
inline double branch_point(double omega) { return 2.0 * omega * omega * omega / (3.0 * std::sqrt(3.0)); }

/// Trigonometric / hyperbolic root of the cubic.
inline double omega_closed_form(double g, double a1, double omega = 1.0) {
  if (!(g >= 0.0) || !(a1 > 0.0) || !(omega > 0.0)) throw DomainError("closed form needs g >= 0, a1 > 0, omega > 0");
  const double r = effective_coupling(g, a1) / branch_point(omega);
  const double k = 2.0 / std::sqrt(3.0) * omega;
  if (r >= 1.0) return k * std::cosh(std::acosh(r) / 3.0);
  return k * std::cos(std::acos(r) / 3.0);
}

}  // namespace varinterp::aho
