#pragma once

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sewi/harness.hpp"

namespace sewi {

/// Flat `key = value` run description. Lines starting with '#' are comments.
/// Lists are comma separated.
struct RunConfig {
  std::string name = "run";
  int dims = 1;
  double x_min = -16.0;
  double x_max = 16.0;
  std::size_t nx = 256;
  double y_min = -16.0;
  double y_max = 16.0;
  std::size_t ny = 256;

  PotentialSpec potential;
  double beta = 0.0;
  double sigma = 1.0;
  DatumSpec initial;

  double tau = 1e-3;
  double T = 0.1;
  std::string first_step = "ewi1_substeps";  // ewi1 | ewi1_substeps
  std::size_t first_step_substeps = 16;
  std::string projection = "oversampled";    // oversampled | pseudospectral
  std::size_t oversample = 4;

  std::size_t snapshot_every = 0;
  bool write_snapshots = false;
  bool write_density = true;
  std::string output_dir = "out";
  bool plots = true;
  bool paper_scale = false;

  std::vector<double> sweep_tau;
  std::vector<std::size_t> sweep_n;
  double coupling_c = 10.0;
  bool couple_grid = true;
  double tau_ref = 1e-4;
  std::size_t n_ref = 0;
  std::size_t ref_substeps = 16;
  double T_long = 50.0;
  std::size_t samples = 1000;

  bool operator==(const RunConfig&) const = default;

  Grid grid() const {
    if (dims == 1) return Grid(Axis{x_min, x_max, nx});
    return Grid(Axis{x_min, x_max, nx}, Axis{y_min, y_max, ny});
  }

  std::size_t substeps() const { return first_step == "ewi1" ? 1 : first_step_substeps; }
  std::size_t effective_oversample() const { return projection == "pseudospectral" ? 1 : oversample; }

  SolverConfig solver() const {
    return SolverConfig{.tau = tau, .T = T, .first_step_substeps = substeps(), .oversample = effective_oversample(),
                        .snapshot_every = snapshot_every};
  }

  ExperimentSpec experiment(SweepKind kind) const {
    ExperimentSpec s;
    s.name = name;
    s.grid = grid();
    s.potential = potential;
    s.beta = beta;
    s.sigma = sigma;
    s.initial = initial;
    s.T = T;
    s.first_step_substeps = substeps();
    s.oversample = effective_oversample();
    s.kind = kind;
    s.taus = sweep_tau;
    s.ns = sweep_n;
    s.fixed_tau = tau;
    s.coupling_c = coupling_c;
    s.couple_grid = couple_grid;
    s.reference = {.tau = tau_ref, .n = n_ref, .substeps = ref_substeps};
    return s;
  }

  void validate() const {
    if (dims != 1 && dims != 2) throw ConfigError("dims must be 1 or 2");
    (void)grid();
    (void)make_potential(potential);
    (void)make_initial_datum(initial);
    (void)Nonlinearity(beta, sigma);
    if (first_step != "ewi1" && first_step != "ewi1_substeps")
      throw ConfigError("first_step must be ewi1 or ewi1_substeps");
    if (projection != "oversampled" && projection != "pseudospectral")
      throw ConfigError("projection must be oversampled or pseudospectral");
    if (oversample < 1) throw ConfigError("oversample must be >= 1");
    solver().validate();
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& v) {
  if (v.empty()) throw ConfigError("expected a number");
  char* end = nullptr;
  errno = 0;
  double d = std::strtod(v.c_str(), &end);
  if (*end != '\0' || errno == ERANGE) throw ConfigError("'" + v + "' is not a number");
  return d;
}

inline std::size_t parse_count(const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError("'" + v + "' is not a nonnegative integer");
  return std::stoull(v);
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + v + "' is not a boolean");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.push_back("");
  for (const auto& x : out)
    if (x.empty()) throw ConfigError("empty entry in list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += fmt_real(xs[i]);
    else
      s += std::to_string(xs[i]);
  }
  return s;
}

struct Field {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline const std::vector<std::pair<std::string, Field>>& schema() {
  using C = RunConfig;
  auto real = [](double C::*m) {
    return Field{[m](C& c, const std::string& v) { c.*m = parse_real(v); },
                 [m](const C& c) { return fmt_real(c.*m); }};
  };
  auto count = [](std::size_t C::*m) {
    return Field{[m](C& c, const std::string& v) { c.*m = parse_count(v); },
                 [m](const C& c) { return std::to_string(c.*m); }};
  };
  auto flag = [](bool C::*m) {
    return Field{[m](C& c, const std::string& v) { c.*m = parse_bool(v); },
                 [m](const C& c) { return std::string(c.*m ? "true" : "false"); }};
  };
  auto text = [](std::string C::*m) {
    return Field{[m](C& c, const std::string& v) { c.*m = v; }, [m](const C& c) { return c.*m; }};
  };
  static const std::vector<std::pair<std::string, Field>> s = {
      {"name", text(&C::name)},
      {"dims", Field{[](C& c, const std::string& v) { c.dims = static_cast<int>(parse_count(v)); },
                     [](const C& c) { return std::to_string(c.dims); }}},
      {"x_min", real(&C::x_min)},
      {"x_max", real(&C::x_max)},
      {"nx", count(&C::nx)},
      {"y_min", real(&C::y_min)},
      {"y_max", real(&C::y_max)},
      {"ny", count(&C::ny)},
      {"potential", Field{[](C& c, const std::string& v) { c.potential.key = v; },
                          [](const C& c) { return c.potential.key; }}},
      {"potential_value", Field{[](C& c, const std::string& v) { c.potential.value = parse_real(v); },
                                [](const C& c) { return fmt_real(c.potential.value); }}},
      {"potential_height", Field{[](C& c, const std::string& v) { c.potential.height = parse_real(v); },
                                 [](const C& c) { return fmt_real(c.potential.height); }}},
      {"potential_half_width", Field{[](C& c, const std::string& v) { c.potential.half_width = parse_real(v); },
                                     [](const C& c) { return fmt_real(c.potential.half_width); }}},
      {"beta", real(&C::beta)},
      {"sigma", real(&C::sigma)},
      {"initial", Field{[](C& c, const std::string& v) { c.initial.key = v; },
                        [](const C& c) { return c.initial.key; }}},
      {"initial_power", Field{[](C& c, const std::string& v) { c.initial.power = parse_real(v); },
                              [](const C& c) { return fmt_real(c.initial.power); }}},
      {"tau", real(&C::tau)},
      {"T", real(&C::T)},
      {"first_step", text(&C::first_step)},
      {"first_step_substeps", count(&C::first_step_substeps)},
      {"projection", text(&C::projection)},
      {"oversample", count(&C::oversample)},
      {"snapshot_every", count(&C::snapshot_every)},
      {"write_snapshots", flag(&C::write_snapshots)},
      {"write_density", flag(&C::write_density)},
      {"output_dir", text(&C::output_dir)},
      {"plots", flag(&C::plots)},
      {"paper_scale", flag(&C::paper_scale)},
      {"sweep_tau", Field{[](C& c, const std::string& v) {
                            c.sweep_tau.clear();
                            for (const auto& x : split_list(v)) c.sweep_tau.push_back(parse_real(x));
                          },
                          [](const C& c) { return join(c.sweep_tau); }}},
      {"sweep_n", Field{[](C& c, const std::string& v) {
                          c.sweep_n.clear();
                          for (const auto& x : split_list(v)) c.sweep_n.push_back(parse_count(x));
                        },
                        [](const C& c) { return join(c.sweep_n); }}},
      {"coupling_c", real(&C::coupling_c)},
      {"couple_grid", flag(&C::couple_grid)},
      {"tau_ref", real(&C::tau_ref)},
      {"n_ref", count(&C::n_ref)},
      {"ref_substeps", count(&C::ref_substeps)},
      {"T_long", real(&C::T_long)},
      {"samples", count(&C::samples)},
  };
  return s;
}

}  // namespace detail

/// All config keys in serialization order.
inline std::vector<std::string> config_keys() {
  std::vector<std::string> k;
  for (const auto& [name, _] : detail::schema()) k.push_back(name);
  return k;
}

/// Parses config text; `origin` prefixes error messages. Every schema
/// violation throws ConfigError naming the line.
inline RunConfig parse_config(const std::string& text, const std::string& origin = "config") {
  RunConfig c;
  std::map<std::string, const detail::Field*> fields;
  for (const auto& [name, f] : detail::schema()) fields[name] = &f;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = detail::trim(line);
    if (body.empty() || body[0] == '#') continue;
    auto where = origin + ":" + std::to_string(lineno) + ": ";
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    std::string key = detail::trim(body.substr(0, eq));
    std::string value = detail::trim(body.substr(eq + 1));
    auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      it->second->set(c, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw ConfigError(where + key + ": value out of range");
    }
  }
  return c;
}

inline std::string serialize_config(const RunConfig& c) {
  std::string s;
  for (const auto& [name, f] : detail::schema()) s += name + " = " + f.get(c) + "\n";
  return s;
}

/// key -> value text, used to echo the configuration into outputs.
inline std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, f] : detail::schema()) out.emplace_back(name, f.get(c));
  return out;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

/// Full-resolution settings: reference tau 1e-5 and long time 500. A
/// spatial sweep that ran at the reference step follows it down.
inline void apply_paper_scale(RunConfig& c) {
  if (c.tau == c.tau_ref) c.tau = 1e-5;
  c.tau_ref = 1e-5;
  c.T_long = 500.0;
  c.paper_scale = true;
}

}  // namespace sewi
