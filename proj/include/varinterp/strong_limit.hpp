#pragma once

// Strong-coupling side: with Omega = c alpha^(1/q) the trial function becomes
// alpha^(p/q) sum_n b_n(c) alpha^(-2n/q), where
//
//   b_n(c) = sum_l a_l sum_{j=n}^{N-l} binom((p - l q)/2, j) binom(j, n) (-1)^(j-n) c^(p - l q - 2n).
//
// The inner bound N - l is the one the trial function itself carries (term l
// keeps N - l powers of u), so b_n(c) is exactly the coefficient of that
// expansion.

#include <array>
#include <cstddef>
#include <vector>

#include "varinterp/laurent.hpp"
#include "varinterp/roots.hpp"
#include "varinterp/series.hpp"

namespace varinterp {

/// b_n(c) = sum_l a_l P_l(c), each P_l an exact monomial in c.
class CoefficientFunction {
 public:
  CoefficientFunction() = default;
  CoefficientFunction(std::vector<double> weights, std::vector<LaurentPoly> basis)
      : weights_(std::move(weights)), basis_(std::move(basis)) {
    if (weights_.size() != basis_.size()) throw DomainError("weights and basis differ in length");
    for (const auto& p : basis_) compiled_.push_back(p.compile());
  }

  double operator()(double c) const {
    double acc = 0.0;
    for (std::size_t l = 0; l < weights_.size(); ++l)
      if (weights_[l] != 0.0) acc += weights_[l] * compiled_[l](c);
    return acc;
  }

  double magnitude(double c) const {
    double acc = 0.0;
    for (std::size_t l = 0; l < weights_.size(); ++l)
      if (weights_[l] != 0.0) acc += std::abs(weights_[l]) * compiled_[l].magnitude(c);
    return acc;
  }

  CoefficientFunction derivative(unsigned k = 1) const {
    std::vector<LaurentPoly> d;
    d.reserve(basis_.size());
    for (const auto& p : basis_) d.push_back(p.derivative(k));
    return CoefficientFunction(weights_, std::move(d));
  }

  std::size_t size() const { return basis_.size(); }
  const LaurentPoly& basis(std::size_t l) const { return basis_[l]; }
  double basis_value(std::size_t l, double c) const { return compiled_[l](c); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
  std::vector<LaurentPoly> basis_;
  std::vector<CompiledLaurent> compiled_;
};

/// Exact c-dependence of b_n for the series s. Orders n > N give the zero function.
inline CoefficientFunction strong_coefficient_function(const WeakSeries& s, const ScalingLaw& law,
                                                       std::size_t n) {
  const std::size_t order = s.order();
  std::vector<LaurentPoly> basis;
  for (std::size_t l = 0; l <= order; ++l) {
    const Rational upper = (law.p - law.q * static_cast<long>(l)) / 2;
    Rational beta = 0;
    for (std::size_t j = n; j + l <= order; ++j) {
      Rational term = binom_general(upper, static_cast<unsigned>(j)) *
                      binom_general(Rational(static_cast<long>(j)), static_cast<unsigned>(n));
      if ((j - n) % 2 == 1) term = -term;
      beta += term;
    }
    const Rational power = law.p - law.q * static_cast<long>(l) - 2 * static_cast<long>(n);
    basis.push_back(LaurentPoly::monomial(beta, power));
  }
  return CoefficientFunction(s.coeffs(), std::move(basis));
}

inline double b_of_c(const WeakSeries& s, const ScalingLaw& law, std::size_t n, double c) {
  if (!(c > 0.0)) throw DomainError("b_n(c) needs c > 0");
  return strong_coefficient_function(s, law, n)(c);
}

/// Growth constant and strong-coupling coefficients.
struct StrongCoeffs {
  static constexpr std::size_t kOrders = 5;  // b_0..b_4

  double c = 0.0;
  std::vector<double> b_raw;    // b_n(c)
  std::vector<double> shifts;   // c_1..c_3 of c(alpha) = c + c_1 x + c_2 x^2 + ...
  std::vector<double> b_final;  // after reexpanding c(alpha)
  std::vector<CoefficientFunction> functions;  // exact b_n(.)
};

struct GrowthSearch {
  double c_min = 1e-4;
  double c_max = 1e4;
  std::size_t probes = 400;
};

/// Smallest positive stationary point of b_0(c). Throws NoExtremum if there is none
/// in the search window.
inline StrongCoeffs optimize_c(const WeakSeries& s, const ScalingLaw& law, const GrowthSearch& search = {}) {
  StrongCoeffs out;
  for (std::size_t n = 0; n < StrongCoeffs::kOrders; ++n)
    out.functions.push_back(strong_coefficient_function(s, law, n));

  const CoefficientFunction d1 = out.functions[0].derivative(1);
  const CoefficientFunction d2 = out.functions[0].derivative(2);
  const CoefficientFunction d3 = out.functions[0].derivative(3);

  auto grid = detail::log_grid(search.c_min, search.c_max, search.probes);
  // Two roots of b0' inside one cell are separated by a root of b0''.
  grid = detail::merge_nodes(grid, detail::bracketed_roots(d2, d3, grid));
  const auto roots = detail::bracketed_roots(d1, d2, grid);
  if (roots.empty()) throw NoExtremum("b_0(c) has no positive extremum in the search window");

  out.c = roots.front();
  for (const auto& f : out.functions) out.b_raw.push_back(f(out.c));
  out.b_final = out.b_raw;
  out.shifts.assign(3, 0.0);
  return out;
}

/// Accounts for the 1/alpha corrections of the optimal frequency, c(alpha) =
/// c + c_1 x + c_2 x^2 + c_3 x^3 with x = alpha^(-2/q), fixing each c_k by
/// stationarity order by order. b_0 and b_1 are unchanged.
inline StrongCoeffs correct_bn(StrongCoeffs sc) {
  if (sc.functions.size() < StrongCoeffs::kOrders) throw DomainError("correct_bn needs b_0..b_4 functions");
  // d[n][k] = k-th derivative of b_n at c.
  std::array<std::array<double, 5>, 5> d{};
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t k = 0; k + n < 5; ++k)
      d[n][k] = k == 0 ? sc.functions[n](sc.c) : sc.functions[n].derivative(static_cast<unsigned>(k))(sc.c);

  const double curv = d[0][2];
  if (curv == 0.0 || !std::isfinite(curv)) throw DegenerateCurvature("b_0''(c) vanishes at the growth constant");

  const double c1 = -d[1][1] / curv;
  const double c2 = -(d[2][1] + c1 * d[1][2] + 0.5 * c1 * c1 * d[0][3]) / curv;
  const double c3 = -(d[3][1] + c2 * d[1][2] + c1 * d[2][2] + c1 * c2 * d[0][3] + 0.5 * c1 * c1 * d[1][3] +
                      c1 * c1 * c1 * d[0][4] / 6.0) /
                    curv;

  const double b2 = d[2][0] + c1 * d[1][1] + 0.5 * c1 * c1 * curv;
  const double b3 = d[3][0] + c2 * d[1][1] + c1 * d[2][1] + c1 * c2 * curv + 0.5 * c1 * c1 * d[1][2] +
                    c1 * c1 * c1 * d[0][3] / 6.0;
  const double b4 = d[4][0] + c3 * d[1][1] + c2 * d[2][1] + c1 * d[3][1] + (0.5 * c2 * c2 + c1 * c3) * curv +
                    c1 * c2 * d[1][2] + 0.5 * c1 * c1 * d[2][2] + 0.5 * c1 * c1 * c2 * d[0][3] +
                    c1 * c1 * c1 * d[1][3] / 6.0 + c1 * c1 * c1 * c1 * d[0][4] / 24.0;

  sc.b_raw.assign({d[0][0], d[1][0], d[2][0], d[3][0], d[4][0]});
  sc.shifts = {c1, c2, c3};
  sc.b_final = {d[0][0], d[1][0], b2, b3, b4};
  return sc;
}

/// optimize_c followed by correct_bn.
inline StrongCoeffs strong_coefficients(const WeakSeries& s, const ScalingLaw& law) {
  return correct_bn(optimize_c(s, law));
}

}  // namespace varinterp
