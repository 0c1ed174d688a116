// varinterp: interpolate | infer | verify
//
// Exit codes: 0 success, 1 failing acceptance criteria, 2 configuration
// error, 3 solver failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varinterp/acceptance.hpp"
#include "varinterp/aho.hpp"
#include "varinterp/figures.hpp"
#include "varinterp/model_file.hpp"
#include "varinterp/report.hpp"

namespace {

using namespace varinterp;

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct ModelChoice {
  std::string model;
  std::string model_file;

  ModelSpec load() const {
    if (!model.empty() && !model_file.empty()) throw ConfigError("--model and --model-file are exclusive");
    if (!model_file.empty()) return parse_model_file(model_file);
    if (model.empty()) throw ConfigError("one of --model or --model-file is required");
    return builtin(model);
  }
};

struct GridFlags {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::size_t> points;
  bool log = false;

  GridSpec resolve(const std::string& model) const {
    GridSpec g = default_grid(model);
    if (min) g.min = *min;
    if (max) g.max = *max;
    if (points) g.points = *points;
    if (log) g.log = true;
    return g;
  }
};

void add_model_flags(CLI::App* cmd, ModelChoice& m) {
  cmd->add_option("--model", m.model, "builtin model: aho, polaron_energy, polaron_mass");
  cmd->add_option("--model-file", m.model_file, "user model file (key = value lines)");
}

// Writes to the file if a path is given, else to stdout.
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output '" + path + "'");
  f(out);
}

int cmd_interpolate(const ModelChoice& mc, const GridFlags& gf, const std::string& out_path) {
  const ModelSpec spec = mc.load();
  const auto grid = make_grid(gf.resolve(spec.name));
  const auto pm = prepare(spec);
  const auto table = figure_table(pm, grid);
  with_output(out_path, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.header(table.header);
    for (const auto& row : table.rows) csv.row(row);
  });
  return 0;
}

int cmd_infer(const ModelChoice& mc, const std::string& out_path) {
  const ModelSpec spec = mc.load();
  if (spec.known_strong.empty()) throw ConfigError("model '" + spec.name + "' has no strong_targets to infer from");
  const auto pm = prepare(spec);
  const auto& inf = *pm.inference;
  const auto rows = ledger_rows(pm);

  with_output(out_path, [&](std::ostream& os) {
    os << "model " << spec.name << "\n";
    os << "coefficients";
    for (std::size_t k = 0; k < pm.series.size(); ++k) os << " a" << k << "=" << format_number(pm.series[k]);
    os << "\n";
    os << "inferred";
    for (std::size_t u = 0; u < inf.inferred.size(); ++u)
      os << " a" << spec.weak.size() + u << "=" << format_number(inf.inferred[u]);
    os << "\n";
    os << "c " << format_number(inf.c) << "\n";
    os << "residuals";
    for (double r : inf.residuals) os << " " << format_number(r);
    os << "\n";
    os << "iterations " << inf.iterations << (inf.multistart ? " (multistart)" : "") << "\n";
    if (spec.name == "aho") os << "closed form a1 = (4 b0/3)^3 = " << format_number(aho::a1_from_b0(spec.known_strong[0])) << "\n";
    os << "ledger\n";
    write_ledger(os, rows);
  });
  write_ledger_file(ledger_path(), rows);
  return 0;
}

int cmd_verify(const std::vector<std::string>& which, const std::vector<std::string>& perturb) {
  ModelSet set = ModelSet::builtins();
  for (const auto& p : perturb) set = perturbed(set, parse_perturbation(p));
  std::vector<int> ids;
  for (const auto& w : which) ids.push_back(criterion_id(w));

  AcceptanceSuite suite(set);
  const auto results = suite.run_all(ids);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    std::cout << format_result(r) << "\n";
    if (!r.pass) failed.push_back(r.name);
  }
  if (failed.empty()) {
    std::cout << "all " << results.size() << " criteria pass\n";
    return 0;
  }
  std::cout << "failing:";
  for (const auto& f : failed) std::cout << " " << f;
  std::cout << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational interpolation between weak- and strong-coupling series"};
  app.require_subcommand(1);

  ModelChoice model;
  GridFlags grid;
  std::string out;
  std::vector<std::string> which;
  std::vector<std::string> perturb;

  auto* interp = app.add_subcommand("interpolate", "interpolant and comparison curves as CSV");
  add_model_flags(interp, model);
  interp->add_option("--alpha-min", grid.min, "grid start (g for the oscillator)");
  interp->add_option("--alpha-max", grid.max, "grid end");
  interp->add_option("--points", grid.points, "grid size");
  interp->add_flag("--log", grid.log, "logarithmic grid");
  interp->add_option("--out", out, "output file (default stdout)");

  auto* infer = app.add_subcommand("infer", "infer unknown weak coefficients from strong targets");
  add_model_flags(infer, model);
  infer->add_option("--out", out, "report file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", which, "criterion number or name (repeatable)");
  verify->add_option("--perturb", perturb, "scale an input, e.g. polaron_mass.a2=1.01 (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*interp) return cmd_interpolate(model, grid, out);
    if (*infer) return cmd_infer(model, out);
    if (*verify) return cmd_verify(which, perturb);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return 0;
}
