#include <gtest/gtest.h>

#include "varinterp/model.hpp"
#include "varinterp/model_file.hpp"

using namespace varinterp;

TEST(Builtins, Inventory) {
  const auto names = builtin_names();
  ASSERT_EQ(names.size(), 3u);
  for (const auto& n : names) EXPECT_EQ(builtin(n).name, n);
  EXPECT_THROW(builtin("nope"), ConfigError);
}

TEST(Builtins, OscillatorConventions) {
  const auto m = builtin("aho");
  EXPECT_EQ(m.weak.size(), 1u);
  EXPECT_EQ(m.weak[0], 0.5);
  EXPECT_DOUBLE_EQ(m.alpha_of(4.0), 1.0);
  EXPECT_EQ(m.apply(1.0, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(m.law.p_value(), 1.0);
  EXPECT_DOUBLE_EQ(m.law.q_value(), 3.0);
}

TEST(Builtins, EnergyPrefactor) {
  const auto m = builtin("polaron_energy");
  EXPECT_EQ(m.alpha_of(3.0), 3.0);
  EXPECT_EQ(m.apply(2.0, 1.5), -3.0);
  EXPECT_EQ(m.known_strong.size(), 2u);
}

TEST(Builtins, MassInputs) {
  const auto m = builtin("polaron_mass");
  EXPECT_EQ(m.weak.size(), 3u);
  EXPECT_DOUBLE_EQ(m.weak[1], 1.0 / 6.0);
  EXPECT_EQ(m.known_strong[0], 0.0227019);
}

TEST(Prefactor, RoundTrip) {
  for (auto p : {Prefactor::none, Prefactor::minus_alpha, Prefactor::quarter_coupling})
    EXPECT_EQ(parse_prefactor(to_string(p)), p);
  EXPECT_THROW(parse_prefactor("alpha^2"), ConfigError);
}

TEST(ModelFile, ParsesAllKeys) {
  const auto m = parse_model_text(
      "# oscillator again\n"
      "name = osc\n"
      "weak_coeffs = 0.5   # a0 only\n"
      "p = 1\n"
      "q = 3\n"
      "strong_targets = 0.667986259155777\n"
      "omega = 1\n"
      "prefactor = g/4\n");
  EXPECT_EQ(m.name, "osc");
  EXPECT_EQ(m.weak.size(), 1u);
  EXPECT_EQ(m.law.q, 3);
  EXPECT_EQ(m.known_strong.size(), 1u);
  EXPECT_EQ(m.prefactor, Prefactor::quarter_coupling);
}

TEST(ModelFile, RationalExponents) {
  const auto m = parse_model_text("weak_coeffs = 1, 2\np = 3/2\nq = 1/2\n");
  EXPECT_EQ(m.law.p, Rational(3, 2));
  EXPECT_EQ(m.law.q, Rational(1, 2));
  EXPECT_EQ(m.name, "user");
  EXPECT_EQ(m.prefactor, Prefactor::none);
}

TEST(ModelFile, Errors) {
  EXPECT_THROW(parse_model_text("p = 1\nq = 1\n"), ConfigError);
  EXPECT_THROW(parse_model_text("weak_coeffs = 1\np = 1\nq = 0\n"), ConfigError);
  EXPECT_THROW(parse_model_text("weak_coeffs = 1\np = 1\nq = 1\ncolour = red\n"), ConfigError);
  EXPECT_THROW(parse_model_text("weak_coeffs = 1\np = 1\np = 2\nq = 1\n"), ConfigError);
  EXPECT_THROW(parse_model_text("weak_coeffs = 1, x\np = 1\nq = 1\n"), ConfigError);
  EXPECT_THROW(parse_model_text("weak_coeffs = 1\np = 1\nq = 1\nomega = -2\n"), ConfigError);
  EXPECT_THROW(parse_model_text("just a line\n"), ConfigError);
  EXPECT_THROW(parse_model_file("/nonexistent/model.txt"), ConfigError);
}
