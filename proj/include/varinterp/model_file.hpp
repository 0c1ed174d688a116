#pragma once

// User model files: one `key = value` per line, '#' starts a comment.
//
//   name           = my_model
//   weak_coeffs    = 0.5, 0.75
//   p              = 1
//   q              = 3
//   strong_targets = 0.667986259
//   omega          = 1
//   prefactor      = none        # none | -alpha | g/4

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "varinterp/model.hpp"

namespace varinterp {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + t + "'");
  }
}

inline std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_real(item, key));
  }
  return out;
}

}  // namespace detail

inline ModelSpec parse_model_text(const std::string& text) {
  static const char* const kKeys[] = {"name", "weak_coeffs", "p", "q", "strong_targets", "omega", "prefactor"};
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  for (const char* k : {"weak_coeffs", "p", "q"})
    if (!kv.count(k)) throw ConfigError(std::string("model file is missing '") + k + "'");

  try {
    ModelSpec m{kv.count("name") ? kv["name"] : "user",
                WeakSeries(detail::parse_list(kv["weak_coeffs"], "weak_coeffs")),
                ScalingLaw(parse_rational(kv["p"]), parse_rational(kv["q"])),
                kv.count("strong_targets") ? detail::parse_list(kv["strong_targets"], "strong_targets")
                                           : std::vector<double>{},
                kv.count("omega") ? detail::parse_real(kv["omega"], "omega") : 1.0,
                parse_prefactor(kv.count("prefactor") ? kv["prefactor"] : "none"),
                {}};
    if (!(m.omega > 0.0)) throw ConfigError("omega must be positive");
    return m;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
}

inline ModelSpec parse_model_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_model_text(ss.str());
}

}  // namespace varinterp
