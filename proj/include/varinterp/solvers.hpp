#pragma once

// Optimal frequency Omega_N(alpha), inference of unknown weak coefficients from
// strong-coupling data, and the resulting interpolant.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "varinterp/model.hpp"
#include "varinterp/reexpand.hpp"
#include "varinterp/roots.hpp"
#include "varinterp/strong_limit.hpp"

namespace varinterp {

enum class CandidateKind { extremum, turning_point };

inline const char* to_string(CandidateKind k) {
  return k == CandidateKind::extremum ? "extremum" : "turning_point";
}

struct FrequencyResult {
  double Omega = 0.0;
  CandidateKind kind = CandidateKind::extremum;
  std::size_t candidates = 0;  // roots found for the condition that selected Omega
  double residual = 0.0;       // |W^(k)| / sum of |term contributions|
};

struct FrequencySearch {
  double lower_factor = 1e-3;  // window starts at lower_factor * omega
  double upper_factor = 10.0;  // ends at upper_factor * max(omega, c alpha^(1/q))
  std::size_t probes = 400;
  int widenings = 3;  // tenfold extensions of the upper end when nothing is found
};

namespace detail {

// Smallest candidate not below omega; if every candidate lies below omega,
// the smallest overall.
inline double select_candidate(const std::vector<double>& roots, double omega) {
  const double floor = omega * (1.0 - 1e-12);
  for (double r : roots)
    if (r >= floor) return r;
  return roots.front();
}

inline std::optional<double> growth_constant(const TrialFunction& t) {
  try {
    return optimize_c(t.series(), t.law()).c;
  } catch (const NoExtremum&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Stationary point of W_N(alpha, .) with turning-point fallback.
///
/// Roots of dW/dOmega are bracketed on a log grid (refined by the roots of the
/// second derivative so that close pairs are not lost). Among them the
/// smallest one at or above omega is taken; the mass-type series, whose
/// extrema come in reciprocal pairs, needs the upper member. Without any
/// extremum, the same rule is applied to the roots of d2W/dOmega2.
inline FrequencyResult find_omega(const TrialFunction& t, double alpha, std::optional<double> growth = std::nullopt,
                                  const FrequencySearch& search = {}) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("find_omega needs alpha >= 0");
  const double omega = t.omega();
  if (alpha == 0.0) return {omega, CandidateKind::extremum, 1, 0.0};

  if (!growth) growth = detail::growth_constant(t);
  const double scale = std::pow(alpha, 1.0 / t.law().q_value()) * (growth ? *growth : omega);
  const double lo = search.lower_factor * omega;
  double hi = search.upper_factor * std::max(omega, scale);

  auto d = [&](int k) { return [&t, alpha, k](double x) { return t.derivative(alpha, x, k); }; };
  std::vector<double> inflections;
  std::vector<double> extrema;
  // widen the window when it holds no candidate at all
  for (int widen = 0; widen <= search.widenings; ++widen, hi *= 10.0) {
    const auto grid = detail::log_grid(lo, hi, search.probes);
    inflections = detail::bracketed_roots(d(2), d(3), grid);
    extrema = detail::bracketed_roots(d(1), d(2), detail::merge_nodes(grid, inflections));
    if (!extrema.empty() || !inflections.empty()) break;
  }

  auto certify = [&](double x, int k) {
    const double mag = t.magnitude(alpha, x, k);
    return mag > 0 ? std::abs(t.derivative(alpha, x, k)) / mag : 0.0;
  };

  if (!extrema.empty()) {
    const double x = detail::select_candidate(extrema, omega);
    return {x, CandidateKind::extremum, extrema.size(), certify(x, 1)};
  }
  if (!inflections.empty()) {
    const double x = detail::select_candidate(inflections, omega);
    return {x, CandidateKind::turning_point, inflections.size(), certify(x, 2)};
  }
  throw NoCandidate("no extremum or turning point of W_N for alpha = " + std::to_string(alpha), alpha);
}

struct InferenceProblem {
  WeakSeries known;                // a_0..a_k
  std::size_t unknown_count = 1;   // m
  std::vector<double> targets;     // b_0..b_{m-1}
  ScalingLaw law;
};

struct InferenceResult {
  WeakSeries series;               // known prefix followed by the inferred coefficients
  std::vector<double> inferred;
  double c = 0.0;
  std::vector<double> residuals;   // relative, one per equation
  int iterations = 0;
  bool multistart = false;         // true if the primary Newton start failed
};

struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-14;   // stop when every scaled residual is below this
  double acceptance = 1e-10;  // required on return
  double max_c_ratio = 1.5;   // c may change by at most this factor per step
};

namespace detail {

class InferenceSystem {
 public:
  explicit InferenceSystem(const InferenceProblem& p)
      : prefix_(p.known.size()), m_(p.unknown_count), targets_(p.targets) {
    const WeakSeries zeros = p.known.extended(std::vector<double>(m_, 0.0));
    for (std::size_t n = 0; n < m_; ++n) b_.push_back(strong_coefficient_function(zeros, p.law, n));
    db0_ = b_[0].derivative(1);
    d2b0_ = b_[0].derivative(2);
    known_ = p.known.coeffs();
  }

  std::size_t size() const { return m_ + 1; }

  std::vector<double> weights(const Eigen::VectorXd& x) const {
    std::vector<double> a = known_;
    for (std::size_t u = 0; u < m_; ++u) a.push_back(x[static_cast<Eigen::Index>(u)]);
    return a;
  }

  // Scaled residuals: b_n rows relative to their targets, the stationarity row
  // relative to the size of the terms of b_0'.
  Eigen::VectorXd residual(const Eigen::VectorXd& x, Eigen::MatrixXd* jac = nullptr) const {
    const std::size_t dim = size();
    const double c = x[static_cast<Eigen::Index>(m_)];
    const auto a = weights(x);
    Eigen::VectorXd f(static_cast<Eigen::Index>(dim));
    if (jac) jac->setZero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

    for (std::size_t n = 0; n < m_; ++n) {
      const double scale = std::max(std::abs(targets_[n]), std::numeric_limits<double>::min());
      double val = 0.0;
      double dc = 0.0;
      const auto db = b_[n].derivative(1);
      for (std::size_t l = 0; l < a.size(); ++l) {
        val += a[l] * b_[n].basis_value(l, c);
        dc += a[l] * db.basis_value(l, c);
      }
      f[static_cast<Eigen::Index>(n)] = (val - targets_[n]) / scale;
      if (jac) {
        for (std::size_t u = 0; u < m_; ++u)
          (*jac)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(u)) =
              b_[n].basis_value(prefix_ + u, c) / scale;
        (*jac)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m_)) = dc / scale;
      }
    }

    double val = 0.0;
    double mag = 0.0;
    double dc = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
      const double t = a[l] * db0_.basis_value(l, c);
      val += t;
      mag += std::abs(t);
      dc += a[l] * d2b0_.basis_value(l, c);
    }
    mag = std::max(mag, std::numeric_limits<double>::min());
    f[static_cast<Eigen::Index>(m_)] = val / mag;
    if (jac) {
      for (std::size_t u = 0; u < m_; ++u)
        (*jac)(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(u)) = db0_.basis_value(prefix_ + u, c) / mag;
      (*jac)(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_)) = dc / mag;
    }
    return f;
  }

 private:
  std::size_t prefix_;
  std::size_t m_;
  std::vector<double> targets_;
  std::vector<double> known_;
  std::vector<CoefficientFunction> b_;
  CoefficientFunction db0_;
  CoefficientFunction d2b0_;
};

struct NewtonOutcome {
  Eigen::VectorXd x;
  double residual;
  int iterations;
};

inline NewtonOutcome damped_newton(const InferenceSystem& sys, Eigen::VectorXd x, const NewtonOptions& opt) {
  const auto m = static_cast<Eigen::Index>(sys.size() - 1);
  Eigen::MatrixXd jac;
  Eigen::VectorXd f = sys.residual(x, &jac);
  double norm = f.norm();
  double best = f.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < opt.max_iterations && f.cwiseAbs().maxCoeff() > opt.tolerance; ++it) {
    if (!jac.allFinite()) throw SingularJacobian("non-finite Jacobian");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) throw SingularJacobian("singular Jacobian in coefficient inference");
    const Eigen::VectorXd step = lu.solve(-f);
    // keep c within a factor of the current value so the iteration stays with
    // the root nearest the start instead of jumping to a far branch
    double lambda = 1.0;
    if (const double cn = x[m] + step[m]; cn > opt.max_c_ratio * x[m] || cn < x[m] / opt.max_c_ratio) {
      const double target = step[m] > 0 ? opt.max_c_ratio * x[m] : x[m] / opt.max_c_ratio;
      lambda = (target - x[m]) / step[m];
    }
    bool accepted = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      Eigen::VectorXd trial = x + lambda * step;
      if (!(trial[m] > 0.0)) continue;
      Eigen::MatrixXd jt;
      Eigen::VectorXd ft = sys.residual(trial, &jt);
      if (!ft.allFinite()) continue;
      if (ft.norm() < norm) {
        x = std::move(trial);
        f = std::move(ft);
        jac = std::move(jt);
        norm = f.norm();
        accepted = true;
        break;
      }
    }
    best = std::min(best, f.cwiseAbs().maxCoeff());
    if (!accepted) break;
  }
  best = std::min(best, f.cwiseAbs().maxCoeff());
  if (!(best <= opt.acceptance))
    throw NoConvergence("coefficient inference did not converge (best scaled residual " + std::to_string(best) + ")",
                        best);
  return {x, best, it};
}

}  // namespace detail

/// Solves b_n(c; a) = b_n* (n < m) together with db_0/dc = 0 for the m unknown
/// weak coefficients and c.
///
/// Newton starts from a = 0 and c at the extremum of b_0 for the known prefix
/// (c = 1 if that has none). If that start fails, a log grid of starting c is
/// tried and the converged solution with the smallest c is returned.
inline InferenceResult infer_coefficients(const InferenceProblem& p, const NewtonOptions& opt = {}) {
  if (p.unknown_count == 0) throw DomainError("inference needs at least one unknown coefficient");
  if (p.targets.size() != p.unknown_count)
    throw DomainError("inference needs as many strong targets as unknown coefficients");
  for (double t : p.targets)
    if (!std::isfinite(t)) throw DomainError("strong target is not finite");

  const detail::InferenceSystem sys(p);
  const auto m = static_cast<Eigen::Index>(p.unknown_count);
  const WeakSeries zeros = p.known.extended(std::vector<double>(p.unknown_count, 0.0));

  double c0 = 1.0;
  try {
    c0 = optimize_c(zeros, p.law).c;
  } catch (const NoExtremum&) {
  }

  auto finish = [&](const detail::NewtonOutcome& out, bool multistart) {
    InferenceResult r{p.known, {}, out.x[m], {}, out.iterations, multistart};
    for (Eigen::Index u = 0; u < m; ++u) r.inferred.push_back(out.x[u]);
    r.series = p.known.extended(r.inferred);
    const Eigen::VectorXd f = sys.residual(out.x);
    for (Eigen::Index i = 0; i < f.size(); ++i) r.residuals.push_back(std::abs(f[i]));
    return r;
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(m + 1);
  x0[m] = c0;
  try {
    return finish(detail::damped_newton(sys, x0, opt), false);
  } catch (const Error& primary) {
    std::optional<detail::NewtonOutcome> chosen;
    for (double cs : detail::log_grid(1e-3, 1e3, 25)) {
      Eigen::VectorXd xs = Eigen::VectorXd::Zero(m + 1);
      xs[m] = cs;
      try {
        auto out = detail::damped_newton(sys, xs, opt);
        if (!chosen || out.x[m] < chosen->x[m]) chosen = out;
      } catch (const Error&) {
      }
    }
    if (!chosen) throw;
    return finish(*chosen, true);
  }
}

/// A model ready for evaluation: its series completed by inference where
/// strong targets are given.
struct PreparedModel {
  ModelSpec spec;
  WeakSeries series;
  std::optional<InferenceResult> inference;
  TrialFunction trial;
  std::optional<double> growth;
};

inline PreparedModel prepare(const ModelSpec& m, const NewtonOptions& opt = {}) {
  std::optional<InferenceResult> inf;
  WeakSeries series = m.weak;
  if (!m.known_strong.empty()) {
    inf = infer_coefficients({m.weak, m.known_strong.size(), m.known_strong, m.law}, opt);
    series = inf->series;
  }
  TrialFunction trial(series, m.law, m.omega);
  auto growth = detail::growth_constant(trial);
  return PreparedModel{m, series, std::move(inf), std::move(trial), growth};
}

struct InterpolantPoint {
  double coupling = 0.0;  // grid value as given (g for the oscillator)
  double alpha = 0.0;
  double Omega = 0.0;
  double series_value = 0.0;  // W_N(alpha, Omega_N)
  double value = 0.0;         // physical quantity, prefactor applied
  CandidateKind kind = CandidateKind::extremum;
};

struct Interpolant {
  std::vector<InterpolantPoint> points;
  std::vector<std::size_t> branch_switches;  // indices i where kind differs from point i-1
};

inline InterpolantPoint interpolate_at(const PreparedModel& pm, double coupling) {
  if (!(coupling >= 0.0)) throw DomainError("interpolant grid values must be >= 0");
  const double alpha = pm.spec.alpha_of(coupling);
  const auto fr = find_omega(pm.trial, alpha, pm.growth);
  const double w = pm.trial.value(alpha, fr.Omega);
  return {coupling, alpha, fr.Omega, w, pm.spec.apply(alpha, w), fr.kind};
}

inline Interpolant interpolant(const PreparedModel& pm, const std::vector<double>& grid) {
  Interpolant out;
  out.points.reserve(grid.size());
  for (double g : grid) {
    out.points.push_back(interpolate_at(pm, g));
    const std::size_t i = out.points.size() - 1;
    if (i > 0 && out.points[i].kind != out.points[i - 1].kind) out.branch_switches.push_back(i);
  }
  return out;
}

inline Interpolant interpolant(const ModelSpec& m, const std::vector<double>& grid) {
  return interpolant(prepare(m), grid);
}

}  // namespace varinterp
