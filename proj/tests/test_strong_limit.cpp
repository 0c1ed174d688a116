#include <gtest/gtest.h>

#include <cmath>

#include "varinterp/model.hpp"
#include "varinterp/reexpand.hpp"
#include "varinterp/strong_limit.hpp"

using namespace varinterp;
using L = LaurentPoly;

TEST(StrongFunction, OscillatorLeading) {
  const double a1 = 0.7;
  const WeakSeries s({0.5, a1});
  for (double c : {0.5, 1.0, 2.0}) EXPECT_NEAR(b_of_c(s, ScalingLaw(1, 3), 0, c), c / 4 + a1 / (c * c), 1e-15);
}

TEST(StrongFunction, MassLeading) {
  const double a1 = 1.0 / 6, a3 = 0.0416929;
  const WeakSeries s({1, a1, 0.02362763, a3});
  for (double c : {0.3, 0.8, 1.5})
    EXPECT_NEAR(b_of_c(s, ScalingLaw(4, 1), 0, c), -a1 * c * c * c / 8 + a3 * c, 1e-15);
}

TEST(StrongFunction, EnergyLeadingBasis) {
  const auto f = strong_coefficient_function(WeakSeries({1, 1, 1, 1, 1}), ScalingLaw(1, 1), 0);
  EXPECT_EQ(f.basis(0), L::monomial(Rational(35, 128), 1));
  EXPECT_EQ(f.basis(1), L::constant(1));
  EXPECT_EQ(f.basis(2), L::monomial(Rational(15, 8), -1));
  EXPECT_EQ(f.basis(3), L::monomial(2, -2));
  EXPECT_EQ(f.basis(4), L::monomial(1, -3));
}

TEST(StrongFunction, EnergySubleadingMatchesExpansion) {
  // b_1 = 35/(32 c) - (5/4) a2/c^3 - a3/c^4 for the energy series
  const WeakSeries s({1, 0.0159196220, 0.000806070048, 6.73e-4, -8.45e-5});
  for (double c : {0.05, 0.1, 0.3})
    EXPECT_NEAR(b_of_c(s, ScalingLaw(1, 1), 1, c),
                35 / (32 * c) - 1.25 * s[2] / (c * c * c) - s[3] / std::pow(c, 4), 1e-10);
}

TEST(StrongFunction, MatchesLargeAlphaLimit) {
  // alpha^(-p/q) W(alpha, c alpha^(1/q)) -> b_0(c)
  const auto m = builtin("polaron_mass");
  const auto s = m.weak.extended({0.0416929});
  const TrialFunction t(s, m.law, 1.0);
  const double c = 0.8;
  const double alpha = 1e4;
  const double lim = t.value(alpha, c * alpha) / std::pow(alpha, 4);
  EXPECT_NEAR(lim, b_of_c(s, m.law, 0, c), 1e-6);
}

TEST(StrongFunction, RejectsNonPositiveC) {
  EXPECT_THROW(b_of_c(WeakSeries({0.5, 0.75}), ScalingLaw(1, 3), 0, 0.0), DomainError);
}

TEST(OptimizeC, OscillatorClosedForm) {
  for (double a1 : {0.75, 0.706510786, 2.0}) {
    const auto sc = optimize_c(WeakSeries({0.5, a1}), ScalingLaw(1, 3));
    EXPECT_NEAR(sc.c, 2 * std::cbrt(a1), 1e-12);
  }
}

TEST(OptimizeC, OscillatorExactA1) {
  const auto sc = optimize_c(WeakSeries({0.5, 0.75}), ScalingLaw(1, 3));
  EXPECT_NEAR(sc.b_raw[0], 0.75 * std::cbrt(0.75), 1e-12);
  EXPECT_NEAR(sc.b_raw[0], 0.681420, 1e-6);
}

TEST(OptimizeC, MassClosedForm) {
  const double a1 = 1.0 / 6, a3 = 0.0416929;
  const auto sc = optimize_c(WeakSeries({1, a1, 0.02362763, a3}), ScalingLaw(4, 1));
  EXPECT_NEAR(sc.c, std::sqrt(8 * a3 / (3 * a1)), 1e-12);
  EXPECT_NEAR(sc.c, 0.816754, 1e-6);
  EXPECT_NEAR(sc.b_raw[0], std::sqrt(32 * a3 * a3 * a3 / (27 * a1)), 1e-12);
  EXPECT_NEAR(sc.b_raw[0], 0.0227019, 1e-6);
}

TEST(OptimizeC, NoExtremum) {
  // b_0 = c / 4 + a1/c^2 with a1 < 0 is monotone
  EXPECT_THROW(optimize_c(WeakSeries({0.5, -1.0}), ScalingLaw(1, 3)), NoExtremum);
}

TEST(CorrectBn, MassReproducesStrongExpansion) {
  const auto sc = strong_coefficients(WeakSeries({1, 1.0 / 6, 0.02362763, 0.0416929203496}), ScalingLaw(4, 1));
  EXPECT_NEAR(sc.b_final[0], 0.0227019, 1e-7);
  EXPECT_NEAR(sc.b_final[1], 0.125722, 1e-6);
  EXPECT_NEAR(sc.b_final[2], 1.15304, 1e-5);
  EXPECT_EQ(sc.b_final[1], sc.b_raw[1]);
}

TEST(CorrectBn, FixedPointWhenHigherOrdersVanish) {
  // first-order oscillator: b_n = 0 for n >= 2 and b_1 = omega^2 part
  auto sc = optimize_c(WeakSeries({0.5, 0.75}), ScalingLaw(1, 3));
  auto fixed = correct_bn(sc);
  EXPECT_EQ(fixed.b_final[0], fixed.b_raw[0]);
  EXPECT_EQ(fixed.b_final[1], fixed.b_raw[1]);

  // a series with b_n(c) = 0 for n >= 1: b_0 = a1 term only in a q = 1 model
  StrongCoeffs flat;
  flat.c = 1.0;
  flat.functions.push_back(CoefficientFunction({1.0, 1.0}, {L::monomial(1, 2), L::monomial(1, -2)}));
  for (int n = 1; n < 5; ++n) flat.functions.push_back(CoefficientFunction({1.0}, {L()}));
  const auto out = correct_bn(flat);
  for (double s : out.shifts) EXPECT_EQ(s, 0.0);
  for (std::size_t n = 1; n < 5; ++n) EXPECT_EQ(out.b_final[n], 0.0);
}

TEST(CorrectBn, DegenerateCurvature) {
  StrongCoeffs flat;
  flat.c = 1.0;
  for (int n = 0; n < 5; ++n) flat.functions.push_back(CoefficientFunction({1.0}, {L::monomial(1, 1)}));
  EXPECT_THROW(correct_bn(flat), DegenerateCurvature);
}

TEST(CorrectBn, AgreesWithDirectExpansion) {
  // the corrected b_2 equals the x^2 coefficient of b_0(c(x)) + x b_1(c(x)) + x^2 b_2(c(x))
  // along the stationary path; check against a fine numerical extremization
  const WeakSeries s({1, 1.0 / 6, 0.02362763, 0.0416929203496});
  const ScalingLaw law(4, 1);
  const auto sc = strong_coefficients(s, law);
  auto total = [&](double c, double x) {
    double acc = 0, xp = 1;
    for (std::size_t n = 0; n < 5; ++n, xp *= x) acc += xp * sc.functions[n](c);
    return acc;
  };
  auto stationary = [&](double x) {
    double c = sc.c;
    for (int i = 0; i < 50; ++i) {
      const double h = 1e-6;
      const double d1 = (total(c + h, x) - total(c - h, x)) / (2 * h);
      const double d2 = (total(c + h, x) - 2 * total(c, x) + total(c - h, x)) / (h * h);
      c -= d1 / d2;
    }
    return total(c, x);
  };
  const double x = 1e-3;
  const double approx = sc.b_final[0] + x * sc.b_final[1] + x * x * sc.b_final[2];
  EXPECT_NEAR(stationary(x), approx, 1e-8);
}
