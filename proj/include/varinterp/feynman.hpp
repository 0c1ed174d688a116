#pragma once

// Variational polaron model: ground-state energy minimized over the
// two-body model frequencies (v, w), and the effective mass at the optimum.
//
//   E(v, w) = 3 (v - w)^2 / (4 v) - (alpha v / sqrt(pi)) Int_0^inf dt e^-t B(t)^(-1/2)
//   m       = 1 + (alpha v^3 / (3 sqrt(pi))) Int_0^inf dt t^2 e^-t B(t)^(-3/2)
//   B(t)    = w^2 t + (v^2 - w^2)(1 - e^(-v t)) / v
//
// Both integrals are taken in t = s^2, which removes the t^(-1/2) endpoint
// behaviour, with adaptive Gauss-Kronrod panels on s in [0, 8].

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "varinterp/errors.hpp"

namespace varinterp {

struct FeynmanParams {
  double v = 3.0;
  double w = 3.0;
};

struct FeynmanEnergy {
  double energy = 0.0;
  FeynmanParams params;
};

namespace detail {

inline constexpr double kFeynmanUpperS = 8.0;
inline constexpr double kFeynmanQuadTol = 1e-13;

// B(s^2) with v = w + d.
inline double feynman_bracket(double w, double d, double s) {
  const double v = w + d;
  const double tau = s * s;
  return w * w * tau + d * (2.0 * w + d) * (-std::expm1(-v * tau)) / v;
}

template <class F>
double integrate_s(F&& f) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, kFeynmanUpperS, 20, kFeynmanQuadTol,
                                                                      &error);
}

inline double feynman_energy_integral(double w, double d) {
  const double v = w + d;
  return integrate_s([w, d, v](double s) {
    if (s == 0.0) return 2.0 / v;
    return 2.0 * s * std::exp(-s * s) / std::sqrt(feynman_bracket(w, d, s));
  });
}

inline double feynman_mass_integral(double w, double d) {
  return integrate_s([w, d](double s) {
    if (s == 0.0) return 0.0;
    const double b = feynman_bracket(w, d, s);
    const double s2 = s * s;
    return 2.0 * s * s2 * s2 * std::exp(-s2) / (b * std::sqrt(b));
  });
}

inline double feynman_functional(double alpha, double w, double d) {
  const double v = w + d;
  return 0.75 * d * d / v - alpha * v / std::sqrt(std::numbers::pi) * feynman_energy_integral(w, d);
}

}  // namespace detail

/// Energy functional at given (v, w), v >= w > 0.
inline double feynman_functional(double alpha, const FeynmanParams& p) {
  if (!(p.w > 0.0) || !(p.v >= p.w)) throw DomainError("Feynman parameters need v >= w > 0");
  return detail::feynman_functional(alpha, p.w, p.v - p.w);
}

/// Minimizes the energy functional: coarse log grid in (w, v - w), coordinate
/// descent with Brent line searches in log variables, then Newton polish on a
/// finite-difference gradient and Hessian.
inline FeynmanEnergy feynman_energy(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("Feynman energy needs alpha >= 0");
  if (alpha == 0.0) return {0.0, {3.0, 3.0}};

  // x = log w, y = log(v - w)
  auto f = [alpha](double x, double y) { return detail::feynman_functional(alpha, std::exp(x), std::exp(y)); };

  const double y_hi = std::log(std::max(1e3, alpha * alpha));
  const double y_lo = std::log(1e-7);
  const double x_lo = std::log(0.5);
  const double x_hi = std::log(10.0);
  constexpr int nx = 12;
  constexpr int ny = 40;
  const double hx = (x_hi - x_lo) / (nx - 1);
  const double hy = (y_hi - y_lo) / (ny - 1);

  double bx = x_lo;
  double by = y_lo;
  double bf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double x = x_lo + hx * i;
      const double y = y_lo + hy * j;
      const double val = f(x, y);
      if (val < bf) {
        bf = val;
        bx = x;
        by = y;
      }
    }

  constexpr int bits = 40;
  double span_x = 2 * hx;
  double span_y = 2 * hy;
  for (int sweep = 0; sweep < 60; ++sweep) {
    const double before = bf;
    const double x0 = bx;
    const double y0 = by;
    auto rx = boost::math::tools::brent_find_minima([&](double x) { return f(x, by); }, bx - span_x, bx + span_x, bits);
    if (rx.second < bf) {
      bx = rx.first;
      bf = rx.second;
    }
    auto ry = boost::math::tools::brent_find_minima([&](double y) { return f(bx, y); }, by - span_y, by + span_y, bits);
    if (ry.second < bf) {
      by = ry.first;
      bf = ry.second;
    }
    span_x = std::clamp(8 * std::abs(bx - x0), 1e-6, 2 * hx);
    span_y = std::clamp(8 * std::abs(by - y0), 1e-6, 2 * hy);
    if (before - bf <= 1e-15 * std::abs(bf) && std::abs(bx - x0) < 1e-9 && std::abs(by - y0) < 1e-9) break;
  }

  // Newton polish.
  for (int it = 0; it < 20; ++it) {
    const double h = 1e-4;
    const double f0 = f(bx, by);
    const double fxp = f(bx + h, by), fxm = f(bx - h, by);
    const double fyp = f(bx, by + h), fym = f(bx, by - h);
    const double fpp = f(bx + h, by + h), fpm = f(bx + h, by - h);
    const double fmp = f(bx - h, by + h), fmm = f(bx - h, by - h);
    const double gx = (fxp - fxm) / (2 * h);
    const double gy = (fyp - fym) / (2 * h);
    const double hxx = (fxp - 2 * f0 + fxm) / (h * h);
    const double hyy = (fyp - 2 * f0 + fym) / (h * h);
    const double hxy = (fpp - fpm - fmp + fmm) / (4 * h * h);
    const double det = hxx * hyy - hxy * hxy;
    if (!(hxx > 0 && det > 0)) break;
    double dx = -(hyy * gx - hxy * gy) / det;
    double dy = -(hxx * gy - hxy * gx) / det;
    bool moved = false;
    for (int k = 0; k < 20; ++k) {
      const double val = f(bx + dx, by + dy);
      if (val <= f0) {
        bx += dx;
        by += dy;
        bf = val;
        moved = true;
        break;
      }
      dx *= 0.5;
      dy *= 0.5;
    }
    if (!moved || std::max(std::abs(dx), std::abs(dy)) < 1e-10) break;
  }

  const double w = std::exp(bx);
  const double v = w + std::exp(by);
  return {bf, {v, w}};
}

inline double feynman_mass(double alpha, const FeynmanParams& p) {
  if (!(alpha >= 0.0)) throw DomainError("Feynman mass needs alpha >= 0");
  if (alpha == 0.0) return 1.0;
  return 1.0 + alpha * p.v * p.v * p.v / (3.0 * std::sqrt(std::numbers::pi)) * detail::feynman_mass_integral(p.w, p.v - p.w);
}

inline double feynman_mass(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("Feynman mass needs alpha >= 0");
  return feynman_mass(alpha, feynman_energy(alpha).params);
}

}  // namespace varinterp
