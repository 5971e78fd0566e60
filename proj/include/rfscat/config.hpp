#pragma once

// Run configuration: an INI-style file of [section] headers and key = value
// lines, plus "section.key=value" overrides from the command line.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace rfscat {

enum class Scatterer { kite, circle };
enum class RunMode { deterministic, parallel };

struct RunConfig {
  // [problem]
  Scatterer scatterer = Scatterer::kite;
  double circle_radius = 1.0;
  double kappa = 1.0;
  double eta = 0.0;  // 0 selects eta = kappa
  Point2 direction{1.0, 0.0};
  double amplitude = 1.0;
  // [discretization]
  int n_gamma = 300;
  int n_sigma = 300;
  double sigma_radius = 11.0;
  // [sampling]
  long samples = 2000;
  int dimension = 1000;
  long start_index = 1;
  // [statistics]
  double epsilon = 1e-12;
  // [output]
  double r_min = 12.0;
  double r_max = 50.0;
  int n_radial = 40;
  int n_angular = 180;
  int farfield_directions = 360;
  std::string out_dir = "out";
  // [run]
  RunMode mode = RunMode::deterministic;
  int threads = 1;
  // [table]
  std::vector<double> table_radii{11, 12, 13, 14, 15};
  std::vector<double> table_wavenumbers{1, 2, 4, 8};

  double coupling() const { return eta == 0.0 ? kappa : eta; }
  double coupling_for(double k) const { return eta == 0.0 ? k : eta; }
  bool has_grid() const { return n_radial > 0 && n_angular > 0; }

  /// Full-scale discretization: 1000 nodes on Gamma and Sigma, 10 000 samples.
  void apply_full_profile() {
    n_gamma = 1000;
    n_sigma = 1000;
    samples = 10000;
    dimension = 1000;
  }
};

namespace detail {

inline std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string &v) {
  std::size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument("not a finite number");
  return d;
}

inline long parse_long(const std::string &v) {
  std::size_t pos = 0;
  const long d = std::stol(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("not an integer");
  return d;
}

inline std::vector<double> parse_double_list(const std::string &v) {
  std::vector<double> out;
  for (const auto &item : split_list(v)) out.push_back(parse_double(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

inline std::string join(const std::vector<double> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

using Setter = std::function<void(RunConfig &, const std::string &)>;

inline const std::map<std::string, Setter> &setters() {
  static const std::map<std::string, Setter> table = {
      {"problem.scatterer",
       [](RunConfig &c, const std::string &v) {
         if (v == "kite") c.scatterer = Scatterer::kite;
         else if (v == "circle") c.scatterer = Scatterer::circle;
         else throw std::invalid_argument("expected kite or circle");
       }},
      {"problem.circle_radius", [](RunConfig &c, const std::string &v) { c.circle_radius = parse_double(v); }},
      {"problem.kappa", [](RunConfig &c, const std::string &v) { c.kappa = parse_double(v); }},
      {"problem.eta", [](RunConfig &c, const std::string &v) { c.eta = parse_double(v); }},
      {"problem.direction",
       [](RunConfig &c, const std::string &v) {
         const auto d = parse_double_list(v);
         if (d.size() != 2) throw std::invalid_argument("expected two components");
         const Point2 p(d[0], d[1]);
         if (!(p.norm() > 0.0)) throw std::invalid_argument("zero direction");
         c.direction = p / p.norm();
       }},
      {"problem.amplitude", [](RunConfig &c, const std::string &v) { c.amplitude = parse_double(v); }},
      {"discretization.n_gamma", [](RunConfig &c, const std::string &v) { c.n_gamma = int(parse_long(v)); }},
      {"discretization.n_sigma", [](RunConfig &c, const std::string &v) { c.n_sigma = int(parse_long(v)); }},
      {"discretization.sigma_radius", [](RunConfig &c, const std::string &v) { c.sigma_radius = parse_double(v); }},
      {"sampling.samples", [](RunConfig &c, const std::string &v) { c.samples = parse_long(v); }},
      {"sampling.dimension", [](RunConfig &c, const std::string &v) { c.dimension = int(parse_long(v)); }},
      {"sampling.start_index", [](RunConfig &c, const std::string &v) { c.start_index = parse_long(v); }},
      {"statistics.epsilon", [](RunConfig &c, const std::string &v) { c.epsilon = parse_double(v); }},
      {"output.r_min", [](RunConfig &c, const std::string &v) { c.r_min = parse_double(v); }},
      {"output.r_max", [](RunConfig &c, const std::string &v) { c.r_max = parse_double(v); }},
      {"output.n_radial", [](RunConfig &c, const std::string &v) { c.n_radial = int(parse_long(v)); }},
      {"output.n_angular", [](RunConfig &c, const std::string &v) { c.n_angular = int(parse_long(v)); }},
      {"output.farfield_directions", [](RunConfig &c, const std::string &v) { c.farfield_directions = int(parse_long(v)); }},
      {"output.out_dir", [](RunConfig &c, const std::string &v) { c.out_dir = v; }},
      {"run.mode",
       [](RunConfig &c, const std::string &v) {
         if (v == "deterministic") c.mode = RunMode::deterministic;
         else if (v == "parallel") c.mode = RunMode::parallel;
         else throw std::invalid_argument("expected deterministic or parallel");
       }},
      {"run.threads", [](RunConfig &c, const std::string &v) { c.threads = int(parse_long(v)); }},
      {"run.profile",
       [](RunConfig &c, const std::string &v) {
         if (v == "full") c.apply_full_profile();
         else if (v != "desk") throw std::invalid_argument("expected desk or full");
       }},
      {"table.radii", [](RunConfig &c, const std::string &v) { c.table_radii = parse_double_list(v); }},
      {"table.wavenumbers", [](RunConfig &c, const std::string &v) { c.table_wavenumbers = parse_double_list(v); }},
  };
  return table;
}

}  // namespace detail

/// Apply one "section.key" = value assignment; where names the origin for
/// diagnostics (file and line, or "--set").
inline void apply_setting(RunConfig &cfg, const std::string &key,
                          const std::string &value, const std::string &where) {
  const auto &table = detail::setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(where + ": unknown key '" + key + "'");
  try {
    it->second(cfg, value);
  } catch (const std::exception &e) {
    throw ConfigError(where + ": " + key + " = '" + value + "': " + e.what());
  }
}

/// "section.key=value" as given on the command line.
inline void apply_override(RunConfig &cfg, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set " + assignment + ": expected section.key=value");
  }
  apply_setting(cfg, detail::trim(assignment.substr(0, eq)),
                detail::trim(assignment.substr(eq + 1)), "--set");
}

inline void parse_config(RunConfig &cfg, std::istream &in,
                         const std::string &name = "config") {
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside a section");
    apply_setting(cfg, section + "." + detail::trim(line.substr(0, eq)),
                  detail::trim(line.substr(eq + 1)), where);
  }
}

inline RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  parse_config(cfg, in, path);
  return cfg;
}

/// Check invariants; wavenumbers lists every kappa the run will use.
inline void validate(const RunConfig &c, const std::vector<double> &wavenumbers) {
  auto fail = [](const std::string &field, const std::string &msg) {
    throw ConfigError(field + ": " + msg);
  };
  for (double k : wavenumbers) {
    if (!(k > 0.0)) fail("problem.kappa", "wavenumber must be positive");
    if (!(c.coupling_for(k) * k > 0.0)) fail("problem.eta", "eta * kappa must be positive");
  }
  if (!(c.circle_radius > 0.0)) fail("problem.circle_radius", "must be positive");
  if (c.n_gamma < 16 || c.n_gamma % 2 != 0) fail("discretization.n_gamma", "must be even and >= 16");
  if (c.n_sigma < 4) fail("discretization.n_sigma", "must be >= 4");
  if (!(c.sigma_radius > 0.0)) fail("discretization.sigma_radius", "must be positive");
  if (c.samples < 1) fail("sampling.samples", "must be >= 1");
  if (c.dimension < 2 || c.dimension % 2 != 0) fail("sampling.dimension", "must be even and >= 2");
  if (c.start_index < 1) fail("sampling.start_index", "must be >= 1");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) fail("statistics.epsilon", "must lie in (0,1)");
  if (c.n_radial < 0 || c.n_angular < 0) fail("output.n_radial", "grid sizes must be >= 0");
  if (c.farfield_directions < 0) fail("output.farfield_directions", "must be >= 0");
  if (c.threads < 1) fail("run.threads", "must be >= 1");
  if (c.has_grid()) {
    if (!(c.r_max >= c.r_min)) fail("output.r_max", "must be >= output.r_min");
    for (double k : wavenumbers) {
      const double need = c.sigma_radius + 0.1 * kTwoPi / k;
      if (!(c.r_min > need)) {
        fail("output.r_min", "must exceed R + 0.1 wavelengths = " +
                                 detail::format_double(need));
      }
    }
  }
}

/// Config in the file format, loadable by parse_config.
inline std::string to_text(const RunConfig &c) {
  using detail::format_double;
  std::ostringstream os;
  os << "[problem]\n"
     << "scatterer = " << (c.scatterer == Scatterer::kite ? "kite" : "circle") << "\n"
     << "circle_radius = " << format_double(c.circle_radius) << "\n"
     << "kappa = " << format_double(c.kappa) << "\n"
     << "eta = " << format_double(c.eta) << "\n"
     << "direction = " << format_double(c.direction.x()) << ", "
     << format_double(c.direction.y()) << "\n"
     << "amplitude = " << format_double(c.amplitude) << "\n"
     << "\n[discretization]\n"
     << "n_gamma = " << c.n_gamma << "\n"
     << "n_sigma = " << c.n_sigma << "\n"
     << "sigma_radius = " << format_double(c.sigma_radius) << "\n"
     << "\n[sampling]\n"
     << "samples = " << c.samples << "\n"
     << "dimension = " << c.dimension << "\n"
     << "start_index = " << c.start_index << "\n"
     << "\n[statistics]\n"
     << "epsilon = " << format_double(c.epsilon) << "\n"
     << "\n[output]\n"
     << "r_min = " << format_double(c.r_min) << "\n"
     << "r_max = " << format_double(c.r_max) << "\n"
     << "n_radial = " << c.n_radial << "\n"
     << "n_angular = " << c.n_angular << "\n"
     << "farfield_directions = " << c.farfield_directions << "\n"
     << "out_dir = " << c.out_dir << "\n"
     << "\n[run]\n"
     << "mode = " << (c.mode == RunMode::deterministic ? "deterministic" : "parallel") << "\n"
     << "threads = " << c.threads << "\n"
     << "\n[table]\n"
     << "radii = " << detail::join(c.table_radii) << "\n"
     << "wavenumbers = " << detail::join(c.table_wavenumbers) << "\n";
  return os.str();
}

}  // namespace rfscat
