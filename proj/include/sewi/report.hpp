#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "sewi/config.hpp"

namespace sewi {

using json = nlohmann::ordered_json;

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("short write to " + path.string());
}

inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// "# key = value" lines so every CSV carries its configuration.
inline std::string csv_preamble(const RunConfig& c) {
  std::string s;
  for (const auto& [k, v] : config_entries(c)) s += "# " + k + " = " + v + "\n";
  return s;
}

}  // namespace detail

inline json config_json(const RunConfig& c) {
  json j = json::object();
  for (const auto& [k, v] : config_entries(c)) j[k] = v;
  return j;
}

inline json grid_json(const Grid& g) {
  json axes = json::array();
  for (int d = 0; d < g.dims(); ++d) axes.push_back({{"a", g.axis(d).a}, {"b", g.axis(d).b}, {"n", g.axis(d).n}});
  return {{"dims", g.dims()}, {"axes", axes}};
}

inline json run_report_json(const RunConfig& c, const RunReport& r) {
  json recs = json::array();
  for (const auto& x : r.records)
    recs.push_back({{"n", x.n}, {"t", x.t}, {"mass", detail::number(x.mass)}, {"energy", detail::number(x.energy)},
                    {"l2_norm", detail::number(x.l2_norm)}, {"h1_norm", detail::number(x.h1_norm)}});
  return {{"config", config_json(c)},
          {"grid", grid_json(r.grid)},
          {"solver",
           {{"tau", r.config.tau},
            {"T", r.config.T},
            {"steps", r.config.steps()},
            {"first_step_substeps", r.config.first_step_substeps},
            {"oversample", r.config.oversample}}},
          {"nonlinearity", {{"beta", r.nonlinearity.beta()}, {"sigma", r.nonlinearity.sigma()}}},
          {"stability", {{"quantity", r.stability.quantity}, {"warning", r.stability.warning}}},
          {"blew_up", r.blew_up},
          {"blow_up_step", r.blow_up_step},
          {"warnings", r.warnings},
          {"wallclock_seconds", r.wallclock_seconds},
          {"records", recs}};
}

inline std::string observables_csv(const RunConfig& c, const RunReport& r) {
  std::string s = detail::csv_preamble(c) + "n,t,mass,energy,l2_norm,h1_norm\n";
  for (const auto& x : r.records)
    s += std::to_string(x.n) + "," + fmt_real(x.t) + "," + fmt_real(x.mass) + "," + fmt_real(x.energy) + "," +
         fmt_real(x.l2_norm) + "," + fmt_real(x.h1_norm) + "\n";
  return s;
}

inline std::string convergence_csv(const RunConfig& c, const ConvergenceTable& t) {
  std::string s = detail::csv_preamble(c) + "resolution,eL2,eH1,order_L2,order_H1\n";
  auto opt = [](const std::optional<double>& o) { return o ? fmt_real(*o) : std::string(); };
  for (const auto& r : t.rows)
    s += fmt_real(r.resolution) + "," + (r.failed ? "" : fmt_real(r.e_l2)) + "," + (r.failed ? "" : fmt_real(r.e_h1)) +
         "," + opt(r.order_l2) + "," + opt(r.order_h1) + "\n";
  return s;
}

inline json convergence_json(const RunConfig& c, const ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = {{"resolution", r.resolution}, {"tau", r.tau},      {"n", r.n},
                {"eL2", detail::number(r.e_l2)}, {"eH1", detail::number(r.e_h1)}, {"failed", r.failed}};
    row["order_L2"] = r.order_l2 ? json(*r.order_l2) : json(nullptr);
    row["order_H1"] = r.order_h1 ? json(*r.order_h1) : json(nullptr);
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  return {{"config", config_json(c)},
          {"name", t.name},
          {"mode", to_string(t.kind)},
          {"slope_L2", detail::number(t.slope_l2)},
          {"slope_H1", detail::number(t.slope_h1)},
          {"roundoff_floor_L2", t.floor_l2},
          {"roundoff_floor_H1", t.floor_h1},
          {"reference_hash", t.reference_hash},
          {"warnings", t.warnings},
          {"wallclock_seconds", t.wallclock_seconds},
          {"rows", rows}};
}

inline std::string drift_csv(const RunConfig& c, const ConservationSeries& s) {
  std::string out = detail::csv_preamble(c) + "# series_tau = " + fmt_real(s.tau) + "\n" + "t,rel_mass_err,rel_energy_err\n";
  for (const auto& x : s.samples) out += fmt_real(x.t) + "," + fmt_real(x.rel_mass) + "," + fmt_real(x.rel_energy) + "\n";
  return out;
}

inline json series_summary(const ConservationSeries& s) {
  return {{"tau", s.tau},
          {"max_rel_mass_err", s.max_mass},
          {"max_rel_energy_err", s.max_energy},
          {"first_decile_max_mass", s.window_max(0.0, 0.1, false)},
          {"last_decile_max_mass", s.window_max(0.9, 1.0, false)},
          {"first_decile_max_energy", s.window_max(0.0, 0.1, true)},
          {"last_decile_max_energy", s.window_max(0.9, 1.0, true)},
          {"mass0", s.mass0},
          {"energy0", s.energy0},
          {"blew_up", s.blew_up},
          {"samples", s.samples.size()},
          {"wallclock_seconds", s.wallclock_seconds}};
}

inline json conservation_json(const RunConfig& c, const ConservationStudy& s, double T_long) {
  return {{"config", config_json(c)},
          {"name", s.name},
          {"T_long", T_long},
          {"coarse", series_summary(s.coarse)},
          {"fine", series_summary(s.fine)},
          {"mass_ratio", detail::number(s.mass_ratio)},
          {"energy_ratio", detail::number(s.energy_ratio)}};
}

}  // namespace sewi
