#pragma once

// Independent reference computations: exact anharmonic-oscillator ground
// state, least-squares extraction of strong-coupling coefficients from a curve,
// and a finite-difference probe of the strong-coupling coefficients straight
// from the trial function.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "varinterp/errors.hpp"
#include "varinterp/reexpand.hpp"
#include "varinterp/series.hpp"

namespace varinterp {

/// p^2/2 + omega^2 x^2/2 + g x^4/4 diagonalized in the even-parity harmonic
/// oscillator states of frequency Omega_b (the Gaussian variational optimum,
/// which only speeds convergence). basis_size counts even states and is doubled
/// until two successive sizes agree to the tolerance.
struct AhoOracleConfig {
  double g = 0.0;
  std::size_t basis_size = 16;
  double omega = 1.0;
  double tolerance = 1e-10;
  std::size_t max_basis = 4096;
};

struct AhoOracleResult {
  double energy = 0.0;
  std::size_t basis_size = 0;  // size at which convergence was declared
  double change = 0.0;         // |E(2M) - E(M)| / |E|
};

namespace detail {

inline double aho_basis_frequency(double g, double omega) {
  // Omega^3 - omega^2 Omega - 3 g / 2 = 0, positive root
  double x = std::max(omega, std::cbrt(1.5 * g));
  for (int i = 0; i < 100; ++i) {
    const double f = x * x * x - omega * omega * x - 1.5 * g;
    const double df = 3 * x * x - omega * omega;
    const double nx = x - f / df;
    if (std::abs(nx - x) <= 1e-15 * x) return nx;
    x = nx;
  }
  return x;
}

inline double aho_ground_state(double g, double omega, double basis_omega, std::size_t even_states) {
  const auto dim = static_cast<Eigen::Index>(even_states);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double wb = basis_omega;
  const double quad = (omega * omega - wb * wb) / (4.0 * wb);  // times (a + a+)^2
  const double quart = g / (16.0 * wb * wb);                    // times (a + a+)^4
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double n = 2.0 * static_cast<double>(i);
    h(i, i) = wb * (n + 0.5) + quad * (2 * n + 1) + quart * (6 * n * n + 6 * n + 3);
    if (i + 1 < dim) {
      const double r2 = std::sqrt((n + 1) * (n + 2));
      h(i, i + 1) = h(i + 1, i) = quad * r2 + quart * (4 * n + 6) * r2;
    }
    if (i + 2 < dim) {
      const double r4 = std::sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4));
      h(i, i + 2) = h(i + 2, i) = quart * r4;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NoConvergence("eigensolver failed", 0.0);
  return es.eigenvalues()(0);
}

}  // namespace detail

inline AhoOracleResult aho_exact_energy(const AhoOracleConfig& cfg) {
  if (!(cfg.g >= 0.0)) throw DomainError("oscillator oracle needs g >= 0");
  if (cfg.basis_size < 16) throw DomainError("oscillator oracle needs basis_size >= 16");
  if (!(cfg.omega > 0.0)) throw DomainError("oscillator oracle needs omega > 0");
  const double wb = detail::aho_basis_frequency(cfg.g, cfg.omega);
  std::size_t m = cfg.basis_size;
  double prev = detail::aho_ground_state(cfg.g, cfg.omega, wb, m);
  double change = 0.0;
  while (2 * m <= cfg.max_basis) {
    const double next = detail::aho_ground_state(cfg.g, cfg.omega, wb, 2 * m);
    change = std::abs(next - prev) / std::abs(next);
    m *= 2;
    prev = next;
    if (change <= cfg.tolerance) return {next, m, change};
  }
  throw NoConvergence("oscillator oracle did not converge up to the basis cap", change);
}

inline double aho_exact_energy(double g, double omega = 1.0) {
  AhoOracleConfig cfg;
  cfg.g = g;
  cfg.omega = omega;
  return aho_exact_energy(cfg).energy;
}

struct CurvePoint {
  double alpha;
  double value;
};

struct AsymptoticFit {
  std::vector<double> coeffs;  // b_0..b_{m-1}
  double rms_residual = 0.0;   // of value / alpha^(p/q)
  double max_residual = 0.0;
  double condition = 0.0;      // of the column-scaled design matrix
};

/// Abscissas used when a caller has no better choice.
inline std::vector<double> default_fit_abscissas() { return {1e3, 3e3, 1e4, 3e4, 1e5}; }

/// Least-squares fit of value / alpha^(p/q) = sum_{n<m} b_n alpha^(-2n/q).
inline AsymptoticFit asymptotic_fit(const std::vector<CurvePoint>& curve, const ScalingLaw& law, std::size_t m,
                                    double max_condition = 1e12) {
  if (m == 0) throw DomainError("asymptotic fit needs m >= 1");
  if (curve.size() < m) throw DomainError("asymptotic fit needs at least m points");
  double lo = curve.front().alpha;
  double hi = lo;
  for (const auto& p : curve) {
    if (!(p.alpha > 0.0)) throw DomainError("asymptotic fit needs alpha > 0");
    lo = std::min(lo, p.alpha);
    hi = std::max(hi, p.alpha);
  }
  if (hi < 100.0 * lo) throw DomainError("asymptotic fit needs abscissas spanning two decades");

  const double p = law.p_value();
  const double q = law.q_value();
  const auto rows = static_cast<Eigen::Index>(curve.size());
  const auto cols = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& pt = curve[static_cast<std::size_t>(i)];
    const double x = std::pow(pt.alpha, -2.0 / q);
    double xn = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j, xn *= x) a(i, j) = xn;
    y[i] = pt.value / std::pow(pt.alpha, p / q);
  }
  Eigen::VectorXd colscale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    colscale[j] = a.col(j).cwiseAbs().maxCoeff();
    a.col(j) /= colscale[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  if (!(cond <= max_condition)) throw IllConditioned("asymptotic fit design matrix is ill-conditioned");
  const Eigen::VectorXd sol = svd.solve(y);
  const Eigen::VectorXd resid = a * sol - y;

  AsymptoticFit fit;
  for (Eigen::Index j = 0; j < cols; ++j) fit.coeffs.push_back(sol[j] / colscale[j]);
  fit.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));
  fit.max_residual = resid.cwiseAbs().maxCoeff();
  fit.condition = cond;
  return fit;
}

/// b_n(c) read off the trial function itself: with Omega = 1 and alpha = c^-q,
/// W is a polynomial in omega^2 whose n-th Taylor coefficient at omega^2 = 0,
/// times c^(p - 2n), is b_n(c). Derivatives by central differences with two
/// Richardson steps.
inline double strong_coefficient_probe(const TrialFunction& t, std::size_t n, double c, double step = 0.05) {
  if (!(c > 0.0)) throw DomainError("probe needs c > 0");
  const double alpha_hat = std::pow(c, -t.law().q_value());
  auto g = [&](double s) { return t.value_with_omega_sq(alpha_hat, 1.0, s); };

  // central n-th difference: sum_k (-1)^k C(n,k) g((n/2 - k) h) / h^n
  auto diff = [&](double h) {
    double acc = 0.0;
    double binom = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double node = (0.5 * static_cast<double>(n) - static_cast<double>(k)) * h;
      acc += ((k % 2) ? -binom : binom) * g(node);
      binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return acc / std::pow(h, static_cast<double>(n));
  };

  double deriv = 0.0;
  if (n == 0) {
    deriv = g(0.0);
  } else {
    // error series in h^2
    const double d1 = diff(step);
    const double d2 = diff(step / 2);
    const double d3 = diff(step / 4);
    const double r1 = (4 * d2 - d1) / 3;
    const double r2 = (4 * d3 - d2) / 3;
    deriv = (16 * r2 - r1) / 15;
  }
  double factorial = 1.0;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
  return deriv / factorial * std::pow(c, t.law().p_value() - 2.0 * static_cast<double>(n));
}

}  // namespace varinterp
