#pragma once

// Tables behind the figure CSVs: the interpolant on a coupling grid with the
// comparison curves of each builtin model.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "varinterp/feynman.hpp"
#include "varinterp/oracle.hpp"
#include "varinterp/roots.hpp"
#include "varinterp/solvers.hpp"

namespace varinterp {

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  bool log = false;
};

inline std::vector<double> make_grid(const GridSpec& g) {
  if (g.points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(g.min < g.max)) throw ConfigError("grid needs min < max");
  if (!(g.min >= 0.0)) throw ConfigError("grid values must be >= 0");
  if (g.log && !(g.min > 0.0)) throw ConfigError("log grid needs min > 0");
  if (g.log) return detail::log_grid(g.min, g.max, g.points);
  std::vector<double> out(g.points);
  for (std::size_t i = 0; i < g.points; ++i)
    out[i] = g.min + (g.max - g.min) * static_cast<double>(i) / static_cast<double>(g.points - 1);
  out.back() = g.max;
  return out;
}

/// Grid used when none is given: the coupling range shown for each model.
inline GridSpec default_grid(const std::string& model) {
  if (model == "aho") return {0.1, 1000.0, 60, true};
  if (model == "polaron_energy") return {0.0, 20.0, 81, false};
  if (model == "polaron_mass") return {0.0, 20.0, 81, false};
  return {0.0, 10.0, 51, false};
}

struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Columns alpha, omega_N, W_N followed by the model's comparison curves:
///   aho             g, E_exact, ratio = W_N / E_exact
///   polaron_energy  weak, strong, feynman (all as energies)
///   polaron_mass    M_as = 1 + b0 alpha^4 and W_N, weak, strong, feynman divided by it
/// Any other model gets weak and strong (when strong targets are given).
/// A failing alpha raises the solver error with that alpha in the message.
inline FigureTable figure_table(const PreparedModel& pm, const std::vector<double>& grid) {
  const std::string& name = pm.spec.name;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const bool has_strong = !pm.spec.known_strong.empty();
  auto strong_value = [&](double alpha) {
    if (!has_strong || !(alpha > 0.0)) return nan;
    return pm.spec.apply(alpha, strong_eval(StrongSeries(pm.spec.law, pm.spec.known_strong), alpha));
  };
  auto weak_value = [&](double alpha) { return pm.spec.apply(alpha, weak_eval(pm.spec.weak, alpha)); };

  FigureTable t;
  t.header = {"alpha", "omega_N", "W_N"};
  if (name == "aho" && pm.spec.prefactor == Prefactor::quarter_coupling)
    t.header.insert(t.header.end(), {"g", "E_exact", "ratio"});
  else if (name == "polaron_energy")
    t.header.insert(t.header.end(), {"weak", "strong", "feynman"});
  else if (name == "polaron_mass")
    t.header.insert(t.header.end(), {"M_as", "W_N/M_as", "weak/M_as", "strong/M_as", "feynman/M_as"});
  else
    t.header.insert(t.header.end(), {"weak", "strong"});

  auto figure_row = [&](double coupling) {
    const auto pt = interpolate_at(pm, coupling);
    std::vector<double> row = {pt.alpha, pt.Omega, pt.value};
    if (name == "aho" && pm.spec.prefactor == Prefactor::quarter_coupling) {
      const double exact = aho_exact_energy(coupling, pm.spec.omega);
      row.insert(row.end(), {coupling, exact, pt.value / exact});
    } else if (name == "polaron_energy") {
      row.insert(row.end(), {weak_value(pt.alpha), strong_value(pt.alpha), feynman_energy(pt.alpha).energy});
    } else if (name == "polaron_mass") {
      const double b0 = has_strong ? pm.spec.known_strong[0] : 0.0;
      const double mas = 1.0 + b0 * std::pow(pt.alpha, 4);
      row.insert(row.end(), {mas, pt.value / mas, weak_value(pt.alpha) / mas, strong_value(pt.alpha) / mas,
                             feynman_mass(pt.alpha) / mas});
    } else {
      row.insert(row.end(), {weak_value(pt.alpha), strong_value(pt.alpha)});
    }
    return row;
  };

  for (double coupling : grid) {
    std::vector<double> row;
    try {
      row = figure_row(coupling);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " (at alpha = " + std::to_string(pm.spec.alpha_of(coupling)) + ")");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace varinterp
