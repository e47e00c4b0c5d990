#pragma once

// Run configuration for the command-line front end.
//
// A configuration comes from three layers, later ones overriding earlier
// ones: a named preset, a key=value config file, and explicit flags.
//
// Config file syntax: one `key=value` per line, `#` starts a comment, blank
// lines ignored. Keys are the RunConfig field names; family parameters are
// written `param.<name>=<value>`; lists (ladder, scan, outputs) are
// comma-separated.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "idtm/errors.hpp"
#include "idtm/nonlinearity.hpp"
#include "idtm/solver.hpp"

namespace idtm::cli {

enum class Format { Text, Csv };

enum class Output { Coeffs, Solution, Error, Residual, Bound, Mer };

struct RunConfig {
  std::optional<std::string> preset;
  std::optional<double> alpha;
  std::optional<std::string> family;
  ParamMap params;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> c;
  std::size_t order = 12;
  std::optional<std::vector<std::size_t>> ladder;
  ScanRange scan{};
  std::size_t grid_points = 1001;
  std::optional<std::string> exact;
  std::vector<Output> outputs{Output::Coeffs};
  std::optional<std::string> output_path;
  Format format = Format::Text;
  double ladder_tol = 1e-6;
  double association_radius = 0.05;
  bool parallel = false;

  SbvpProblem problem() const {
    return SbvpProblem(*alpha, Nonlinearity::from_config(*family, params), *a, *b, *c);
  }
};

inline const char* output_name(Output o) {
  switch (o) {
    case Output::Coeffs: return "coeffs";
    case Output::Solution: return "solution";
    case Output::Error: return "error";
    case Output::Residual: return "residual";
    case Output::Bound: return "bound";
    case Output::Mer: return "mer";
  }
  return "?";
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

inline double to_double(const std::string& field, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  }
  if (pos != text.size() || !std::isfinite(v)) {
    throw ConfigError(field + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

inline long long to_integer(const std::string& field, const std::string& text) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(field + ": expected an integer, got '" + text + "'");
  }
  if (pos != text.size()) throw ConfigError(field + ": expected an integer, got '" + text + "'");
  return v;
}

inline std::size_t to_count(const std::string& field, const std::string& text, long long min) {
  const long long v = to_integer(field, text);
  if (v < min) {
    throw ConfigError(field + ": must be >= " + std::to_string(min) + ", got " + text);
  }
  return static_cast<std::size_t>(v);
}

inline Output parse_output(const std::string& s) {
  if (s == "coeffs") return Output::Coeffs;
  if (s == "solution" || s == "solution_table") return Output::Solution;
  if (s == "error" || s == "error_table") return Output::Error;
  if (s == "residual" || s == "residual_table") return Output::Residual;
  if (s == "bound") return Output::Bound;
  if (s == "mer") return Output::Mer;
  throw ConfigError("outputs: unknown output '" + s + "'");
}

}  // namespace detail

/// Names accepted by apply_preset.
inline std::vector<std::string> preset_names() {
  return {"isothermal-gas-sphere", "thermal-explosion", "oxygen-diffusion",
          "human-head",            "human-head-case-two", "membrane-cap"};
}

/// Fills the problem fields of `cfg` for one of the built-in test problems.
inline void apply_preset(RunConfig& cfg, const std::string& name) {
  auto set = [&](double alpha, std::string family, ParamMap params, double a, double b, double c,
                 std::optional<std::string> exact) {
    cfg.preset = name;
    cfg.alpha = alpha;
    cfg.family = std::move(family);
    cfg.params = std::move(params);
    cfg.a = a;
    cfg.b = b;
    cfg.c = c;
    cfg.exact = std::move(exact);
  };
  if (name == "isothermal-gas-sphere") {
    set(2.0, "power_law", {{"gamma", 5.0}}, 1.0, 0.0, std::sqrt(3.0) / 2.0, "isothermal_gas_sphere");
  } else if (name == "thermal-explosion") {
    set(1.0, "thermal_explosion", {{"nu", -1.0}}, 1.0, 0.0, 0.0, "thermal_explosion");
  } else if (name == "oxygen-diffusion") {
    set(2.0, "michaelis_menten", {{"delta", 0.76129}, {"mu", 0.03119}}, 5.0, 1.0, 5.0, std::nullopt);
  } else if (name == "human-head") {
    set(2.0, "heat_source", {{"l", 1.0}, {"kappa", 1.0}}, 1.0, 1.0, 0.0, std::nullopt);
  } else if (name == "human-head-case-two") {
    set(2.0, "heat_source", {{"l", 1.0}, {"kappa", 1.0}}, 0.1, 1.0, 0.0, std::nullopt);
  } else if (name == "membrane-cap") {
    set(3.0, "membrane_cap", {}, 1.0, 0.0, 1.0, std::nullopt);
  } else {
    throw ConfigError("preset: unknown preset '" + name + "'");
  }
}

/// Applies one `key=value` assignment. Throws ConfigError naming the key.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "preset") {
    apply_preset(cfg, value);
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, value);
  } else if (key == "family") {
    if (cfg.family != value) cfg.params.clear();
    cfg.family = value;
  } else if (key.rfind("param.", 0) == 0 && key.size() > 6) {
    cfg.params[key.substr(6)] = to_double(key, value);
  } else if (key == "a") {
    cfg.a = to_double(key, value);
  } else if (key == "b") {
    cfg.b = to_double(key, value);
  } else if (key == "c") {
    cfg.c = to_double(key, value);
  } else if (key == "order") {
    cfg.order = to_count(key, value, 2);
  } else if (key == "ladder") {
    std::vector<std::size_t> l;
    for (const auto& item : split(value, ',')) l.push_back(to_count(key, item, 2));
    cfg.ladder = std::move(l);
  } else if (key == "scan") {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw ConfigError("scan: expected lo,hi,steps");
    cfg.scan.lo = to_double(key, parts[0]);
    cfg.scan.hi = to_double(key, parts[1]);
    cfg.scan.steps = to_count(key, parts[2], 2);
  } else if (key == "grid_points") {
    cfg.grid_points = to_count(key, value, 11);
  } else if (key == "exact") {
    if (value.empty() || value == "none") cfg.exact.reset();
    else cfg.exact = value;
  } else if (key == "outputs") {
    cfg.outputs.clear();
    for (const auto& item : split(value, ',')) {
      if (!item.empty()) cfg.outputs.push_back(parse_output(item));
    }
  } else if (key == "output_path") {
    cfg.output_path = value;
  } else if (key == "format") {
    if (value == "text") cfg.format = Format::Text;
    else if (value == "csv") cfg.format = Format::Csv;
    else throw ConfigError("format: expected text or csv, got '" + value + "'");
  } else if (key == "ladder_tol") {
    cfg.ladder_tol = to_double(key, value);
  } else if (key == "association_radius") {
    cfg.association_radius = to_double(key, value);
  } else if (key == "parallel") {
    if (value == "true" || value == "1") cfg.parallel = true;
    else if (value == "false" || value == "0") cfg.parallel = false;
    else throw ConfigError("parallel: expected true or false");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

/// Checks the cross-field invariants; throws ConfigError naming the field.
inline void validate(const RunConfig& cfg) {
  if (!cfg.alpha) throw ConfigError("alpha: missing (give a preset or alpha)");
  if (!cfg.family) throw ConfigError("family: missing (give a preset or family)");
  if (!cfg.a || !cfg.b || !cfg.c) throw ConfigError("a, b, c: boundary constants missing");
  if (cfg.order < 2) throw ConfigError("order: must be >= 2");
  if (cfg.grid_points < 11) throw ConfigError("grid_points: must be >= 11");
  if (!(cfg.scan.lo < cfg.scan.hi)) throw ConfigError("scan: lo must be < hi");
  if (cfg.scan.steps < 2) throw ConfigError("scan: steps must be >= 2");
  if (cfg.ladder) {
    if (cfg.ladder->empty() || cfg.ladder->back() != cfg.order) {
      throw ConfigError("ladder: must end at order " + std::to_string(cfg.order));
    }
    for (std::size_t i = 1; i < cfg.ladder->size(); ++i) {
      if ((*cfg.ladder)[i] <= (*cfg.ladder)[i - 1]) {
        throw ConfigError("ladder: orders must be strictly increasing");
      }
    }
  }
  if (!(cfg.ladder_tol > 0.0)) throw ConfigError("ladder_tol: must be positive");
  if (!(cfg.association_radius > 0.0)) throw ConfigError("association_radius: must be positive");
  if (cfg.outputs.empty()) throw ConfigError("outputs: nothing to emit");
  try {
    (void)cfg.problem();
  } catch (const UsageError& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

/// Applies config-file text on top of `cfg`. Errors carry the line number.
inline void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  apply_config_text(cfg, text);
  validate(cfg);
  return cfg;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RunConfig parse_config(const std::string& path) { return parse_config_text(read_file(path)); }

}  // namespace idtm::cli
