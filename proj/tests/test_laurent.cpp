#include <gtest/gtest.h>

#include <cmath>

#include "varinterp/laurent.hpp"

using namespace varinterp;
using L = LaurentPoly;

TEST(Laurent, ArithmeticCancelsExactly) {
  const L a = L::monomial(Rational(1, 3), 2) + L::monomial(2, -1);
  const L b = L::monomial(Rational(1, 3), 2);
  EXPECT_EQ(a - b, L::monomial(2, -1));
  EXPECT_TRUE((a - a).empty());
}

TEST(Laurent, ProductAndPower) {
  const L x = L::monomial(1, 1);
  const L y = L::constant(1) + x;
  const L sq = y.pow(2);
  EXPECT_EQ(sq.coefficient(0), 1);
  EXPECT_EQ(sq.coefficient(1), 2);
  EXPECT_EQ(sq.coefficient(2), 1);
  EXPECT_EQ(y.pow(0), L::constant(1));
}

TEST(Laurent, FractionalPowersDifferentiate) {
  const L p = L::monomial(1, Rational(1, 2));
  const L d = p.derivative();
  EXPECT_EQ(d.coefficient(Rational(-1, 2)), Rational(1, 2));
  EXPECT_NEAR(p(4.0), 2.0, 1e-15);
}

TEST(Laurent, DerivativeOfAntiderivativeIsIdentity) {
  const L p = L::monomial(3, 2) + L::monomial(Rational(-5, 7), -3) + L::monomial(Rational(2, 5), Rational(3, 2), 1);
  EXPECT_EQ(p.antiderivative().derivative(), p);
}

TEST(Laurent, AntiderivativeRejectsInverse) { EXPECT_THROW(L::monomial(1, -1).antiderivative(), DomainError); }

TEST(Laurent, NonConstantPartDropsConstants) {
  const L p = L::constant(5) + L::monomial(1, 2) + L::monomial(3, 0, 1);
  const L nc = p.non_constant_part();
  EXPECT_EQ(nc, L::monomial(1, 2));
}

TEST(Laurent, SymbolicOmegaEvaluation) {
  // Omega/2 + omega^2 / (2 Omega)
  const L p = L::monomial(Rational(1, 2), 1) + L::monomial(Rational(1, 2), -1, 1);
  EXPECT_NEAR(p(2.0, 3.0), 1.0 + 9.0 / 4.0, 1e-15);
  EXPECT_EQ(p.with_unit_omega(), L::monomial(Rational(1, 2), 1) + L::monomial(Rational(1, 2), -1));
}

TEST(Laurent, CompiledMatchesAndMagnitudeBounds) {
  const L p = L::monomial(3, 2) - L::monomial(7, -3) + L::monomial(Rational(1, 3), Rational(1, 2), 2);
  const auto c = p.compile();
  for (double x : {0.3, 1.0, 2.7}) {
    const double exact = 3 * x * x - 7 / (x * x * x) + std::sqrt(x) * 1.21 / 3;
    EXPECT_NEAR(c(x, 1.1), exact, 1e-13 * std::abs(exact));
    EXPECT_GE(c.magnitude(x, 1.1), std::abs(c(x, 1.1)));
  }
}

TEST(Laurent, StringForm) {
  EXPECT_EQ(L().str(), "0");
  EXPECT_NE(L::monomial(1, 2).str().find("x^2"), std::string::npos);
}
