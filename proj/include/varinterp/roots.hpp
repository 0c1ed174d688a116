#pragma once

// Bracketing root search shared by the frequency and growth-constant solvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace varinterp::detail {

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Bisection on [lo, hi] (f(lo), f(hi) of opposite sign) down to a few ulps,
/// then one safeguarded Newton step.
template <class F, class DF>
double bisect_polish(F&& f, DF&& df, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  const double fx = f(x);
  const double d = df(x);
  if (d != 0.0 && std::isfinite(d)) {
    const double xn = x - fx / d;
    if (xn >= lo && xn <= hi && std::abs(f(xn)) < std::abs(fx)) x = xn;
  }
  return x;
}

/// All sign changes of f across consecutive grid points, refined. Exact zeros
/// at grid nodes are reported once.
template <class F, class DF>
std::vector<double> bracketed_roots(F&& f, DF&& df, const std::vector<double>& grid) {
  std::vector<double> roots;
  if (grid.empty()) return roots;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0) {
      if (roots.empty() || roots.back() != grid[i]) roots.push_back(grid[i]);
      continue;
    }
    if (b == 0.0) {
      roots.push_back(grid[i + 1]);
      continue;
    }
    if ((a < 0) != (b < 0)) roots.push_back(bisect_polish(f, df, grid[i], grid[i + 1], a));
  }
  return roots;
}

/// Sorted union of a grid and extra nodes inside its range.
inline std::vector<double> merge_nodes(std::vector<double> grid, const std::vector<double>& extra) {
  for (double x : extra)
    if (x > grid.front() && x < grid.back()) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace varinterp::detail
