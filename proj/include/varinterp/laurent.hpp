#pragma once

// Laurent polynomials in one variable with exact rational coefficients.
//
// Each term is coeff * x^power * (omega^2)^k: the baseline frequency omega
// stays symbolic and is bound to a number only at evaluation. Powers of x are
// exact rationals, so integer, half-integer and general fractional exponents
// all share one representation.

#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "varinterp/series.hpp"

namespace varinterp {

struct Exponent {
  Rational power;    // of the main variable
  int omega_sq = 0;  // of omega^2

  friend bool operator<(const Exponent& a, const Exponent& b) {
    if (a.power != b.power) return a.power < b.power;
    return a.omega_sq < b.omega_sq;
  }
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.power == b.power && a.omega_sq == b.omega_sq;
  }
};

/// Floating-point snapshot of a LaurentPoly for repeated evaluation.
class CompiledLaurent {
 public:
  CompiledLaurent() = default;

  template <class Terms>
  explicit CompiledLaurent(const Terms& terms) {
    terms_.reserve(terms.size());
    for (const auto& [e, c] : terms) {
      Term t;
      t.coeff = to_double(c);
      t.power = to_double(e.power);
      t.integral = denominator(e.power) == 1;
      t.ipower = t.integral ? numerator(e.power).template convert_to<int>() : 0;
      t.omega_sq = e.omega_sq;
      terms_.push_back(t);
    }
  }

  template <class T>
  T operator()(T x, T omega_sq = T(1)) const {
    T acc = 0;
    for (const auto& t : terms_) acc += term(t, x, omega_sq);
    return acc;
  }

  /// Sum of absolute term values: the magnitude that rounding errors scale with.
  template <class T>
  T magnitude(T x, T omega_sq = T(1)) const {
    T acc = 0;
    for (const auto& t : terms_) acc += std::abs(term(t, x, omega_sq));
    return acc;
  }

  bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    double coeff = 0;
    double power = 0;
    bool integral = true;
    int ipower = 0;
    int omega_sq = 0;
  };

  template <class T>
  static T int_pow(T x, int n) {
    if (n < 0) return T(1) / int_pow(x, -n);
    T r = 1;
    while (n) {
      if (n & 1) r *= x;
      x *= x;
      n >>= 1;
    }
    return r;
  }

  template <class T>
  static T term(const Term& t, T x, T omega_sq) {
    const T xp = t.integral ? int_pow(x, t.ipower) : std::pow(x, T(t.power));
    return T(t.coeff) * xp * int_pow(omega_sq, t.omega_sq);
  }

  std::vector<Term> terms_;
};

class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  LaurentPoly() = default;

  static LaurentPoly constant(const Rational& c) { return monomial(c, 0); }

  static LaurentPoly monomial(const Rational& coeff, const Rational& power, int omega_sq = 0) {
    LaurentPoly p;
    if (coeff != 0) p.terms_.emplace(Exponent{power, omega_sq}, coeff);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Rational& power, int omega_sq = 0) const {
    auto it = terms_.find(Exponent{power, omega_sq});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add(Exponent{ea.power + eb.power, ea.omega_sq + eb.omega_sq}, ca * cb);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly pow(unsigned n) const {
    LaurentPoly r = constant(1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// d/dx, omega held fixed.
  LaurentPoly derivative() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
      if (e.power != 0) r.add(Exponent{e.power - 1, e.omega_sq}, c * e.power);
    return r;
  }

  LaurentPoly derivative(unsigned k) const {
    LaurentPoly r = *this;
    for (unsigned i = 0; i < k; ++i) r = r.derivative();
    return r;
  }

  /// Inverse of derivative() on terms with power != 0. A 1/x term would need a
  /// logarithm and is rejected.
  LaurentPoly antiderivative() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
      if (e.power == -1) throw DomainError("antiderivative of x^-1 is not a Laurent polynomial");
      r.add(Exponent{e.power + 1, e.omega_sq}, c / (e.power + 1));
    }
    return r;
  }

  LaurentPoly non_constant_part() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
      if (e.power != 0) r.terms_.emplace(e, c);
    return r;
  }

  /// Exact substitution omega = 1.
  LaurentPoly with_unit_omega() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add(Exponent{e.power, 0}, c);
    return r;
  }

  CompiledLaurent compile() const { return CompiledLaurent(terms_); }

  double operator()(double x, double omega = 1.0) const { return compile()(x, omega * omega); }

  std::string str(const char* var = "x") const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      os << (first ? "" : " + ") << "(" << c << ")";
      if (e.power != 0) os << "*" << var << "^" << e.power;
      if (e.omega_sq != 0) os << "*w^" << 2 * e.omega_sq;
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  void add(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

}  // namespace varinterp
