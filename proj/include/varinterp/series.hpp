#pragma once

// Weak- and strong-coupling series and the exact arithmetic they are built on.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "varinterp/errors.hpp"

namespace varinterp {

/// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Generalized binomial coefficient x(x-1)...(x-j+1)/j! for rational x.
inline Rational binom_general(const Rational& x, unsigned j) {
  Rational num = 1;
  Rational den = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / den;
}

/// Parses "3", "-1/2" or "0.25" into an exact rational. Decimal input is
/// taken literally (0.25 -> 1/4).
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ConfigError("empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Rational num(s.substr(0, slash));
      Rational den(s.substr(slash + 1));
      if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
      return num / den;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      const bool neg = s[0] == '-';
      const std::string head = s.substr(neg || s[0] == '+' ? 1 : 0, dot - (neg || s[0] == '+' ? 1 : 0));
      const std::string tail = s.substr(dot + 1);
      boost::multiprecision::cpp_int scale = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
      boost::multiprecision::cpp_int whole(head.empty() ? "0" : head);
      boost::multiprecision::cpp_int frac(tail.empty() ? "0" : tail);
      Rational r = Rational(whole * scale + frac, scale);
      return neg ? Rational(-r) : r;
    }
    return Rational(s);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("not a rational number: '" + text + "'");
  }
}

/// Exponent pair fixing the strong-coupling powers alpha^((p - 2n)/q).
struct ScalingLaw {
  Rational p;
  Rational q;

  ScalingLaw(Rational p_, Rational q_) : p(std::move(p_)), q(std::move(q_)) {
    if (q <= 0) throw DomainError("scaling law requires q > 0");
  }

  double p_value() const { return to_double(p); }
  double q_value() const { return to_double(q); }
};

/// Coefficients a_0..a_N of sum a_n alpha^n. Stored after removal of any
/// overall factor; the factor lives in the model description.
class WeakSeries {
 public:
  explicit WeakSeries(std::vector<double> coeffs, std::string label = {})
      : coeffs_(std::move(coeffs)), label_(std::move(label)) {
    if (coeffs_.empty()) throw DomainError("weak series needs at least a_0");
    for (double a : coeffs_)
      if (!std::isfinite(a)) throw DomainError("weak series coefficient is not finite");
  }

  /// Truncation order N.
  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t n) const { return coeffs_[n]; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::string& label() const { return label_; }

  /// Copy with extra coefficients appended.
  WeakSeries extended(const std::vector<double>& tail) const {
    std::vector<double> c = coeffs_;
    c.insert(c.end(), tail.begin(), tail.end());
    return WeakSeries(std::move(c), label_);
  }

 private:
  std::vector<double> coeffs_;
  std::string label_;
};

/// alpha^(p/q) * sum b_n alpha^(-2n/q).
class StrongSeries {
 public:
  StrongSeries(ScalingLaw law, std::vector<double> coeffs)
      : law_(std::move(law)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("strong series needs at least b_0");
    for (double b : coeffs_)
      if (!std::isfinite(b)) throw DomainError("strong series coefficient is not finite");
  }

  const ScalingLaw& law() const { return law_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  ScalingLaw law_;
  std::vector<double> coeffs_;
};

/// Horner evaluation of the truncated weak-coupling series.
inline double weak_eval(const WeakSeries& s, double alpha) {
  double acc = 0.0;
  for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend(); ++it) acc = acc * alpha + *it;
  return acc;
}

inline double strong_eval(const StrongSeries& s, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("strong-coupling series needs alpha > 0");
  const double q = s.law().q_value();
  const double x = std::pow(alpha, -2.0 / q);
  double acc = 0.0;
  for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend(); ++it) acc = acc * x + *it;
  return std::pow(alpha, s.law().p_value() / q) * acc;
}

}  // namespace varinterp
