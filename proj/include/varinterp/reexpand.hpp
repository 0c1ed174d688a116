#pragma once

// The reexpanded trial function W_N(alpha, Omega).
//
// Writing the weak series as omega^p sum a_n (alpha/omega^q)^n and substituting
// omega^2 = Omega^2 (1 - u), u = 1 - omega^2/Omega^2, the binomial expansion of
// (1 - u)^((p - q n)/2) is truncated at total order N in alpha, counting u as
// order alpha. Term n keeps j <= N - n powers of u.

#include <array>
#include <cstddef>
#include <vector>

#include "varinterp/laurent.hpp"
#include "varinterp/series.hpp"

namespace varinterp {

/// f_n(Omega) = sum_{j=0}^{N-n} binom((p - q n)/2, j) (-1)^j (1 - omega^2/Omega^2)^j,
/// expanded into a Laurent polynomial in Omega with omega symbolic.
inline LaurentPoly build_fn(std::size_t n, std::size_t order, const ScalingLaw& law) {
  if (n > order) throw DomainError("build_fn requires n <= N");
  const Rational upper = (law.p - law.q * static_cast<long>(n)) / 2;
  const LaurentPoly u = LaurentPoly::constant(1) - LaurentPoly::monomial(1, -2, 1);
  LaurentPoly result;
  LaurentPoly u_pow = LaurentPoly::constant(1);
  for (std::size_t j = 0; j <= order - n; ++j) {
    Rational w = binom_general(upper, static_cast<unsigned>(j));
    if (j % 2 == 1) w = -w;
    result += u_pow * w;
    u_pow = u_pow * u;
  }
  return result;
}

struct TrialTerm {
  std::size_t order;  // n
  double coeff;       // a_n
  LaurentPoly poly;   // Omega^(p - q n) f_n(Omega)
};

/// W_N(alpha, Omega) = sum_n a_n alpha^n Omega^(p - q n) f_n(Omega).
class TrialFunction {
 public:
  static constexpr int kMaxDerivative = 3;

  TrialFunction(WeakSeries series, ScalingLaw law, double omega)
      : series_(std::move(series)), law_(std::move(law)), omega_(omega) {
    if (!(omega_ > 0.0)) throw DomainError("baseline frequency must be positive");
    const std::size_t order = series_.order();
    for (std::size_t n = 0; n <= order; ++n) {
      LaurentPoly poly =
          LaurentPoly::monomial(1, law_.p - law_.q * static_cast<long>(n)) * build_fn(n, order, law_);
      terms_.push_back({n, series_[n], std::move(poly)});
    }
    for (int k = 0; k <= kMaxDerivative; ++k) {
      auto& slot = compiled_[static_cast<std::size_t>(k)];
      for (const auto& t : terms_) slot.push_back(t.poly.derivative(static_cast<unsigned>(k)).compile());
    }
  }

  const WeakSeries& series() const { return series_; }
  const ScalingLaw& law() const { return law_; }
  double omega() const { return omega_; }
  const std::vector<TrialTerm>& terms() const { return terms_; }
  std::size_t order() const { return series_.order(); }

  double value(double alpha, double Omega) const { return derivative(alpha, Omega, 0); }

  /// k-th exact Omega-derivative, 0 <= k <= 3.
  double derivative(double alpha, double Omega, int k) const {
    return sum(alpha, Omega, omega_ * omega_, k, false);
  }

  /// Sum of absolute term contributions to the k-th derivative; the scale for
  /// residual checks.
  double magnitude(double alpha, double Omega, int k) const {
    return sum(alpha, Omega, omega_ * omega_, k, true);
  }

  /// Value with omega^2 bound to an arbitrary real (also negative); W is a
  /// polynomial in omega^2.
  double value_with_omega_sq(double alpha, double Omega, double omega_sq) const {
    return sum(alpha, Omega, omega_sq, 0, false);
  }

 private:
  double sum(double alpha, double Omega, double omega_sq, int k, bool absolute) const {
    if (!(Omega > 0.0)) throw DomainError("trial function needs Omega > 0");
    if (k < 0 || k > kMaxDerivative) throw DomainError("derivative order out of range");
    const auto& polys = compiled_[static_cast<std::size_t>(k)];
    double acc = 0.0;
    double alpha_pow = 1.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const double w = terms_[i].coeff * alpha_pow;
      if (w != 0.0) {
        acc += absolute ? std::abs(w) * polys[i].magnitude(Omega, omega_sq)
                        : w * polys[i](Omega, omega_sq);
      }
      alpha_pow *= alpha;
    }
    return acc;
  }

  WeakSeries series_;
  ScalingLaw law_;
  double omega_;
  std::vector<TrialTerm> terms_;
  std::array<std::vector<CompiledLaurent>, kMaxDerivative + 1> compiled_;
};

inline TrialFunction build_trial(const WeakSeries& s, const ScalingLaw& law, double omega = 1.0) {
  return TrialFunction(s, law, omega);
}

inline double eval_trial(const TrialFunction& t, double alpha, double Omega) { return t.value(alpha, Omega); }

inline double deriv_trial(const TrialFunction& t, double alpha, double Omega, int k) {
  if (k != 1 && k != 2) throw DomainError("deriv_trial supports k = 1 or 2");
  return t.derivative(alpha, Omega, k);
}

}  // namespace varinterp
