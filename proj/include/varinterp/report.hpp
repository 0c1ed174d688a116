#pragma once

// CSV output and the ledger of literature values against computed ones.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "varinterp/solvers.hpp"

namespace varinterp {

/// 17 significant digits, enough to round-trip a double. -0 prints as 0.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names) { line(names); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    line(cells);
  }

  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

struct LedgerRow {
  std::string quantity;
  double paper_value = 0.0;
  double computed_value = 0.0;
  std::string source;
};

/// Computed counterpart of a published quantity name:
///   c       growth constant of the completed series
///   aK      K-th weak coefficient of the completed series
///   bK      final strong coefficient b_K (after the growth corrections)
///   c[N=K]  growth constant of the series truncated after a_K
inline double computed_quantity(const PreparedModel& pm, const std::string& q) {
  if (q == "c") {
    if (pm.inference) return pm.inference->c;
    return optimize_c(pm.series, pm.spec.law).c;
  }
  if (q.rfind("c[N=", 0) == 0 && q.back() == ']') {
    const auto order = static_cast<std::size_t>(std::stoul(q.substr(4, q.size() - 5)));
    if (order >= pm.series.size()) throw DomainError("ledger quantity '" + q + "' exceeds the series order");
    std::vector<double> head(pm.series.coeffs().begin(), pm.series.coeffs().begin() + static_cast<long>(order) + 1);
    return optimize_c(WeakSeries(head), pm.spec.law).c;
  }
  if (q.size() >= 2 && (q[0] == 'a' || q[0] == 'b')) {
    const auto k = static_cast<std::size_t>(std::stoul(q.substr(1)));
    if (q[0] == 'a') {
      if (k >= pm.series.size()) throw DomainError("ledger quantity '" + q + "' exceeds the series order");
      return pm.series[k];
    }
    const auto sc = strong_coefficients(pm.series, pm.spec.law);
    if (k >= sc.b_final.size()) throw DomainError("ledger quantity '" + q + "' is not available");
    return sc.b_final[k];
  }
  throw DomainError("unknown ledger quantity '" + q + "'");
}

inline std::vector<LedgerRow> ledger_rows(const PreparedModel& pm) {
  std::vector<LedgerRow> rows;
  for (const auto& pv : pm.spec.published)
    rows.push_back({pm.spec.name + "." + pv.quantity, pv.value, computed_quantity(pm, pv.quantity), pv.source});
  return rows;
}

inline void write_ledger(std::ostream& os, const std::vector<LedgerRow>& rows) {
  CsvWriter csv(os);
  csv.header({"quantity", "paper_value", "computed_value", "source_eq"});
  for (const auto& r : rows) csv.line({r.quantity, format_number(r.paper_value), format_number(r.computed_value), r.source});
}

/// VARINTERP_LEDGER if set, else varinterp_ledger.csv in the working directory.
inline std::string ledger_path() {
  if (const char* env = std::getenv("VARINTERP_LEDGER"); env && *env) return env;
  return "varinterp_ledger.csv";
}

inline void write_ledger_file(const std::string& path, const std::vector<LedgerRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write ledger '" + path + "'");
  write_ledger(f, rows);
}

}  // namespace varinterp
