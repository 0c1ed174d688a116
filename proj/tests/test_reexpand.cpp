#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "varinterp/model.hpp"
#include "varinterp/reexpand.hpp"

using namespace varinterp;
using L = LaurentPoly;

TEST(BuildFn, TopOrderIsOne) {
  for (std::size_t n : {0u, 1u, 3u}) EXPECT_EQ(build_fn(n, n, ScalingLaw(4, 1)), L::constant(1));
}

TEST(BuildFn, MassFirstOrderTerm) {
  const L t = L::monomial(1, 3) * build_fn(1, 3, ScalingLaw(4, 1));
  const L expected =
      L::monomial(Rational(-1, 8), 3) + L::monomial(Rational(3, 4), 1) + L::monomial(Rational(3, 8), -1);
  EXPECT_EQ(t.with_unit_omega(), expected);
}

TEST(BuildFn, OscillatorLeadingTermKeepsOmega) {
  const L t = L::monomial(1, 1) * build_fn(0, 1, ScalingLaw(1, 3));
  EXPECT_EQ(t, L::monomial(Rational(1, 2), 1) + L::monomial(Rational(1, 2), -1, 1));
}

TEST(BuildFn, RejectsOrderAboveN) { EXPECT_THROW(build_fn(3, 2, ScalingLaw(1, 1)), DomainError); }

TEST(Trial, OscillatorFirstOrder) {
  const double a1 = 0.7;
  const TrialFunction t(WeakSeries({0.5, a1}), ScalingLaw(1, 3), 1.3);
  for (double g : {0.2, 3.0}) {
    const double alpha = g / 4;
    for (double Om : {0.5, 1.7}) {
      const double expected = Om / 4 + 1.69 / (4 * Om) + a1 * alpha / (Om * Om);
      EXPECT_NEAR(t.value(alpha, Om), expected, 1e-14);
    }
  }
}

TEST(Trial, MassThirdOrderExplicitForm) {
  const WeakSeries s({1.0, 1.0 / 6, 0.02362763, 0.0416929});
  const TrialFunction t(s, ScalingLaw(4, 1), 1.0);
  for (double alpha : {0.3, 2.0, 9.0})
    for (double Om : {0.8, 1.0, 2.5}) {
      const double expected = s[0] + s[1] * alpha * (-Om * Om * Om / 8 + 0.75 * Om + 3 / (8 * Om)) +
                              s[2] * alpha * alpha + s[3] * alpha * alpha * alpha * Om;
      EXPECT_NEAR(t.value(alpha, Om), expected, 1e-12 * std::abs(expected));
    }
}

TEST(Trial, EnergyFourthOrderExplicitForm) {
  const WeakSeries s({1, 0.0159196220, 0.000806070048, 6.73047343e-4, -8.4505836e-5});
  const TrialFunction t(s, ScalingLaw(1, 1), 1.0);
  for (double alpha : {0.5, 4.0})
    for (double O : {0.9, 1.6}) {
      // energy = -alpha W
      const double reference =
          s[0] * alpha *
              (-35.0 / 128 * O - 35 / (32 * O) + 35 / (64 * std::pow(O, 3)) - 7 / (32 * std::pow(O, 5)) +
               5 / (128 * std::pow(O, 7))) -
          s[1] * alpha * alpha + s[2] * std::pow(alpha, 3) * (-15 / (8 * O) + 5 / (4 * std::pow(O, 3)) - 3 / (8 * std::pow(O, 5))) +
          s[3] * std::pow(alpha, 4) * (-2 / (O * O) + 1 / std::pow(O, 4)) - s[4] * std::pow(alpha, 5) / std::pow(O, 3);
      EXPECT_NEAR(-alpha * t.value(alpha, O), reference, 1e-12 * std::abs(reference));
    }
}

TEST(Trial, ReexpansionIdentityAtBaseline) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const auto& name : builtin_names()) {
    const auto m = builtin(name);
    const auto s = m.weak.extended({0.01, -0.002});
    for (double omega : {1.0, 0.7}) {
      const TrialFunction t(s, m.law, omega);
      for (int i = 0; i < 50; ++i) {
        const double alpha = std::pow(10.0, u(rng));
        // W at Omega = omega is omega^p sum a_n (alpha / omega^q)^n
        double expected = 0;
        for (std::size_t n = 0; n < s.size(); ++n)
          expected += s[n] * std::pow(alpha, n) * std::pow(omega, m.law.p_value() - m.law.q_value() * n);
        EXPECT_NEAR(t.value(alpha, omega) / expected, 1.0, 1e-13);
      }
    }
  }
}

TEST(Trial, AlphaZeroIsLeadingTerm) {
  const TrialFunction t(WeakSeries({0.5, 0.75}), ScalingLaw(1, 3), 1.0);
  EXPECT_NEAR(t.value(0.0, 2.0), 0.5 * (1.0 + 0.25), 1e-15);  // a0 (Omega/2 + 1/(2 Omega))
  EXPECT_NEAR(t.value(0.0, 1.0), 0.5, 1e-15);
}

TEST(Trial, DerivativesAgreeWithFiniteDifferences) {
  const TrialFunction t(WeakSeries({1, 1.0 / 6, 0.02362763, 0.0416929}), ScalingLaw(4, 1), 1.0);
  const double alpha = 1.5;
  const double h = 1e-5;
  for (double Om : {0.7, 1.3, 3.0}) {
    const double fd1 = (t.value(alpha, Om + h) - t.value(alpha, Om - h)) / (2 * h);
    const double fd2 = (t.derivative(alpha, Om + h, 1) - t.derivative(alpha, Om - h, 1)) / (2 * h);
    EXPECT_NEAR(deriv_trial(t, alpha, Om, 1), fd1, 1e-7 * std::max(1.0, std::abs(fd1)));
    EXPECT_NEAR(deriv_trial(t, alpha, Om, 2), fd2, 1e-7 * std::max(1.0, std::abs(fd2)));
  }
}

TEST(Trial, MassExtremumHasZeroDerivative) {
  const double a1 = 1.0 / 6, a3 = 0.0416929;
  const TrialFunction t(WeakSeries({1, a1, 0.02362763, a3}), ScalingLaw(4, 1), 1.0);
  for (double alpha : {0.5, 2.0, 10.0}) {
    const double k = 4 * a3 / (3 * a1) * alpha * alpha;
    const double Om = std::sqrt(1 + k + std::sqrt((1 + k) * (1 + k) - 1));
    EXPECT_NEAR(t.derivative(alpha, Om, 1) / t.magnitude(alpha, Om, 1), 0.0, 1e-12);
  }
}

TEST(Trial, Errors) {
  const TrialFunction t(WeakSeries({0.5}), ScalingLaw(1, 3), 1.0);
  EXPECT_THROW(t.value(1.0, 0.0), DomainError);
  EXPECT_THROW(t.value(1.0, -1.0), DomainError);
  EXPECT_THROW(deriv_trial(t, 1.0, 1.0, 3), DomainError);
  EXPECT_THROW(TrialFunction(WeakSeries({0.5}), ScalingLaw(1, 3), 0.0), DomainError);
}
