#pragma once

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "sewi/report.hpp"
#include "sewi/svg.hpp"

namespace sewi::cli {

enum ExitCode : int { ok = 0, failure = 1, config_error = 2, blow_up = 3, io_error = 4 };

namespace fs = std::filesystem;

inline std::string snapshot_name(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "state_%08zu.sewi", n);
  return buf;
}

inline void write_run_outputs(const RunConfig& c, const RunReport& r, const fs::path& out) {
  detail::write_text(out / "report.json", run_report_json(c, r).dump(2) + "\n");
  detail::write_text(out / "observables.csv", observables_csv(c, r));
  if (c.write_density) write_density_csv(out / "density.csv", r.final_state);
}

inline int cmd_run(const RunConfig& c, std::ostream& log = std::cerr) {
  c.validate();
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  EvolveOptions opts;
  if (c.write_snapshots && c.snapshot_every > 0)
    opts.observers.push_back([&](const SnapshotView& s) { write_snapshot(out / snapshot_name(s.n), s.field); });
  try {
    RunReport r = evolve(make_initial_datum(c.initial), c.grid(), c.solver(), make_potential(c.potential),
                         Nonlinearity(c.beta, c.sigma), opts);
    write_run_outputs(c, r, out);
    for (const auto& w : r.warnings) log << "warning: " << w << "\n";
    log << "run: " << r.config.steps() << " steps in " << r.wallclock_seconds << " s, outputs in " << out.string()
        << "\n";
    return ok;
  } catch (const EvolveBlowUp& e) {
    RunReport partial = e.partial();
    if (e.last_finite_state()) partial.final_state = *e.last_finite_state();
    write_run_outputs(c, partial, out);
    log << "error: " << e.what() << "\n";
    return blow_up;
  }
}

inline svg::Plot convergence_plot(const ConvergenceTable& t, const std::vector<double>& guides) {
  svg::Plot p;
  p.title = t.name + " (" + to_string(t.kind) + ")";
  p.xlabel = t.kind == SweepKind::spatial ? "h" : "tau";
  p.ylabel = "error at T";
  svg::Series l2{"L2 error", {}, {}, "#1f77b4"}, h1{"H1 error", {}, {}, "#d62728"};
  for (const auto& r : t.rows) {
    if (r.failed) continue;
    l2.x.push_back(r.resolution);
    l2.y.push_back(r.e_l2);
    h1.x.push_back(r.resolution);
    h1.y.push_back(r.e_h1);
  }
  if (!l2.x.empty()) {
    char buf[32];
    for (double s : guides) {
      std::snprintf(buf, sizeof buf, "slope %g", s);
      p.guides.push_back({s, l2.x.back(), l2.y.back() / 2, buf});
    }
  }
  p.series = {l2, h1};
  return p;
}

inline std::vector<double> expected_slopes(SweepKind k) {
  if (k == SweepKind::spatial) return {2.0, 4.0};
  return {1.0, 2.0};
}

inline int cmd_converge(const RunConfig& c, SweepKind kind, std::ostream& log = std::cerr) {
  c.validate();
  ExperimentSpec spec = c.experiment(kind);
  spec.validate();
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  ConvergenceTable t = convergence(spec);
  std::string stem = std::string("convergence_") + to_string(kind);
  detail::write_text(out / (stem + ".csv"), convergence_csv(c, t));
  detail::write_text(out / (stem + ".json"), convergence_json(c, t).dump(2) + "\n");
  if (c.plots) detail::write_text(out / (stem + ".svg"), svg::render(convergence_plot(t, expected_slopes(kind))));
  for (const auto& w : t.warnings) log << "warning: " << w << "\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "converge %s: slope L2 %.3f, H1 %.3f (%zu rows, %.1f s)\n", to_string(kind), t.slope_l2,
                t.slope_h1, t.rows.size(), t.wallclock_seconds);
  log << buf;
  for (const auto& r : t.rows)
    if (r.failed) {
      log << "error: row " << fmt_real(r.resolution) << " failed: " << r.note << "\n";
      return blow_up;
    }
  return ok;
}

inline svg::Plot drift_plot(const std::string& title, const std::vector<const ConservationSeries*>& runs) {
  svg::Plot p;
  p.title = title;
  p.xlabel = "t";
  p.ylabel = "relative drift";
  p.log_x = false;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::size_t k = 0;
  for (const auto* s : runs) {
    char buf[48];
    svg::Series m, e;
    std::snprintf(buf, sizeof buf, "mass, tau=%g", s->tau);
    m.label = buf;
    std::snprintf(buf, sizeof buf, "energy, tau=%g", s->tau);
    e.label = buf;
    m.color = colors[k++ % 4];
    e.color = colors[k++ % 4];
    m.markers = e.markers = false;
    for (const auto& x : s->samples) {
      if (x.t == 0.0) continue;
      m.x.push_back(x.t);
      m.y.push_back(x.rel_mass);
      e.x.push_back(x.t);
      e.y.push_back(x.rel_energy);
    }
    p.series.push_back(m);
    p.series.push_back(e);
  }
  return p;
}

inline std::string tau_tag(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", tau);
  return buf;
}

inline int cmd_conserve(const RunConfig& c, double T_long, std::ostream& log = std::cerr) {
  c.validate();
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  ExperimentSpec spec = c.experiment(SweepKind::temporal);
  ConservationStudy s = conservation_study(spec, T_long, c.tau, c.samples);
  detail::write_text(out / ("drift_tau_" + tau_tag(s.coarse.tau) + ".csv"), drift_csv(c, s.coarse));
  detail::write_text(out / ("drift_tau_" + tau_tag(s.fine.tau) + ".csv"), drift_csv(c, s.fine));
  detail::write_text(out / "conservation.json", conservation_json(c, s, T_long).dump(2) + "\n");
  if (c.plots) detail::write_text(out / "conservation.svg", svg::render(drift_plot(c.name, {&s.coarse, &s.fine})));
  char buf[200];
  std::snprintf(buf, sizeof buf, "conserve: max drift mass %.3e / %.3e, energy %.3e / %.3e, ratios %.3f %.3f\n",
                s.coarse.max_mass, s.fine.max_mass, s.coarse.max_energy, s.fine.max_energy, s.mass_ratio, s.energy_ratio);
  log << buf;
  if (s.coarse.blew_up || s.fine.blew_up) {
    log << "error: blow-up during conservation run\n";
    return blow_up;
  }
  return ok;
}

inline int cmd_benchmark(const RunConfig& c, std::ostream& log = std::cerr) {
  double tau = c.tau, T = c.T;
  std::size_t n = c.nx;
  if (c.paper_scale) tau = 2.5e-6, T = 200.0, n = 2048;
  const fs::path out = c.output_dir;
  fs::create_directories(out);
  RunConfig echo = c;
  echo.name = "benchmark_soliton";
  echo.dims = 1;
  echo.x_min = -16, echo.x_max = 16, echo.nx = n;
  echo.potential = {.key = "zero"};
  echo.beta = -2.0, echo.sigma = 1.0;
  echo.initial = {.key = "benchmark_soliton"};
  echo.tau = tau, echo.T = T;
  echo.validate();
  try {
    BenchmarkResult b = benchmark_soliton(tau, n, T, echo.substeps());
    json j = run_report_json(echo, b.report);
    j["analytic_available"] = b.analytic_available;
    j["note"] = b.note;
    j["drift"] = series_summary(b.drift);
    detail::write_text(out / "report.json", j.dump(2) + "\n");
    detail::write_text(out / "observables.csv", observables_csv(echo, b.report));
    detail::write_text(out / "drift.csv", drift_csv(echo, b.drift));
    write_density_csv(out / "density_initial.csv", b.initial);
    write_density_csv(out / "density.csv", b.report.final_state);
    if (c.plots) detail::write_text(out / "drift.svg", svg::render(drift_plot("benchmark soliton", {&b.drift})));
    char buf[160];
    std::snprintf(buf, sizeof buf, "benchmark: max drift mass %.3e, energy %.3e (%.1f s)\n", b.drift.max_mass,
                  b.drift.max_energy, b.report.wallclock_seconds);
    log << buf << "note: " << b.note << "\n";
    return ok;
  } catch (const EvolveBlowUp& e) {
    write_run_outputs(echo, e.partial(), out);
    log << "error: " << e.what() << "\n";
    return blow_up;
  }
}

/// Maps library errors to exit codes.
template <class F>
int guarded(F&& f, std::ostream& log = std::cerr) {
  try {
    return f();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const BlowUpError& e) {
    log << "error: " << e.what() << "\n";
    return blow_up;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << "\n";
    return io_error;
  } catch (const fs::filesystem_error& e) {
    log << "I/O error: " << e.what() << "\n";
    return io_error;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace sewi::cli
