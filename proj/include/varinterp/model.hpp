#pragma once

// Model descriptions: a weak series, its scaling law, the known strong-coupling
// coefficients and how the series relates to the physical quantity.

#include <string>
#include <string_view>
#include <vector>

#include "varinterp/series.hpp"

namespace varinterp {

/// Relation between the tabulated series and the physical quantity.
enum class Prefactor {
  none,              // value = W(alpha), coupling = alpha
  minus_alpha,       // value = -alpha W(alpha)
  quarter_coupling,  // coupling g with alpha = g/4, value = W(alpha)
};

inline std::string_view to_string(Prefactor p) {
  switch (p) {
    case Prefactor::none: return "none";
    case Prefactor::minus_alpha: return "-alpha";
    case Prefactor::quarter_coupling: return "g/4";
  }
  return "none";
}

inline Prefactor parse_prefactor(std::string_view text) {
  if (text == "none" || text.empty()) return Prefactor::none;
  if (text == "-alpha" || text == "minus_alpha") return Prefactor::minus_alpha;
  if (text == "g/4" || text == "alpha=g/4" || text == "quarter_coupling") return Prefactor::quarter_coupling;
  throw ConfigError("unknown prefactor '" + std::string(text) + "' (expected none, -alpha or g/4)");
}

/// A literature value kept for comparison with what the solvers compute.
struct PublishedValue {
  std::string quantity;
  double value;
  std::string source;
};

struct ModelSpec {
  std::string name;
  WeakSeries weak;
  ScalingLaw law;
  std::vector<double> known_strong;  // targets b_0, b_1, ...
  double omega = 1.0;
  Prefactor prefactor = Prefactor::none;
  std::vector<PublishedValue> published;

  /// Series coupling alpha for a user-facing coupling (g for the oscillator).
  double alpha_of(double coupling) const {
    return prefactor == Prefactor::quarter_coupling ? coupling / 4.0 : coupling;
  }

  /// Physical value from the series value at alpha.
  double apply(double alpha, double series_value) const {
    return prefactor == Prefactor::minus_alpha ? -alpha * series_value : series_value;
  }
};

namespace constants {

// Anharmonic oscillator p^2/2 + x^2/2 + g x^4/4, alpha = g/4.
inline constexpr double kAhoA0 = 0.5;
inline constexpr double kAhoA1Exact = 0.75;
inline constexpr double kAhoB0 = 0.667986259155777108270962016919860;
inline constexpr double kAhoA1Reference = 0.773970;

// Polaron ground-state energy; the series is -E/alpha.
inline constexpr double kEnergyA1 = 0.0159196220;
inline constexpr double kEnergyA2 = 0.000806070048;
inline constexpr double kEnergyB0 = 0.108513;
inline constexpr double kEnergyB1 = 2.836;
inline constexpr double kEnergyC4Reference = 0.09819868;
inline constexpr double kEnergyA3Reference = 6.43047343e-4;
inline constexpr double kEnergyA4Reference = -8.4505836e-5;
inline constexpr double kEnergyC2Reference = 0.120154;
inline constexpr double kEnergyOmegaFitSlope = 0.07;  // Omega_4 ~ c alpha + 1/(1 + 0.07 alpha)

// Polaron effective mass.
inline constexpr double kMassA1 = 1.0 / 6.0;
inline constexpr double kMassA2 = 0.02362763;
inline constexpr double kMassB0 = 0.0227019;
inline constexpr double kMassA3Reference = 0.0416929;
inline constexpr double kMassB1Reference = 0.125722;
inline constexpr double kMassB2Reference = 1.15304;

// Expansions of the Feynman variational polaron.
inline constexpr double kFeynmanEnergyWeak2 = -0.012345;
inline constexpr double kFeynmanEnergyStrong0 = -0.106103;
inline constexpr double kFeynmanEnergyStrong1 = -2.8294;
inline constexpr double kFeynmanMassWeak1 = 1.0 / 6.0;
inline constexpr double kFeynmanMassWeak2 = 2.469136e-2;
inline constexpr double kFeynmanMassStrong0 = 0.020141;
inline constexpr double kFeynmanMassStrong1 = -1.012775;

}  // namespace constants

inline std::vector<std::string> builtin_names() { return {"aho", "polaron_energy", "polaron_mass"}; }

inline ModelSpec builtin(std::string_view name) {
  using namespace constants;
  if (name == "aho") {
    return ModelSpec{"aho",
                     WeakSeries({kAhoA0}, "anharmonic oscillator ground state"),
                     ScalingLaw(1, 3),
                     {kAhoB0},
                     1.0,
                     Prefactor::quarter_coupling,
                     {{"a1", kAhoA1Reference, "reference a1 inferred from b0"}}};
  }
  if (name == "polaron_energy") {
    return ModelSpec{"polaron_energy",
                     WeakSeries({1.0, kEnergyA1, kEnergyA2}, "polaron energy -E/alpha"),
                     ScalingLaw(1, 1),
                     {kEnergyB0, kEnergyB1},
                     1.0,
                     Prefactor::minus_alpha,
                     {{"c", kEnergyC4Reference, "reference simultaneous solution (growth constant)"},
                      {"a3", kEnergyA3Reference, "reference simultaneous solution"},
                      {"a4", kEnergyA4Reference, "reference simultaneous solution"},
                      {"c[N=2]", kEnergyC2Reference, "reference growth constant of the second-order approximant"}}};
  }
  if (name == "polaron_mass") {
    return ModelSpec{"polaron_mass",
                     WeakSeries({1.0, kMassA1, kMassA2}, "polaron effective mass"),
                     ScalingLaw(4, 1),
                     {kMassB0},
                     1.0,
                     Prefactor::none,
                     {{"a3", kMassA3Reference, "reference inferred a3"},
                      {"b1", kMassB1Reference, "reference strong-coupling expansion of the interpolant"},
                      {"b2", kMassB2Reference, "reference strong-coupling expansion of the interpolant"}}};
  }
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

}  // namespace varinterp
