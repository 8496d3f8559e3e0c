#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sewi/integrator.hpp"
#include "sewi/snapshot.hpp"

namespace sewi {

enum class SweepKind { temporal, spatial, coupled };

inline const char* to_string(SweepKind k) {
  switch (k) {
    case SweepKind::temporal: return "temporal";
    case SweepKind::spatial: return "spatial";
    case SweepKind::coupled: return "coupled";
  }
  return "?";
}

inline SweepKind parse_sweep_kind(const std::string& s) {
  if (s == "temporal") return SweepKind::temporal;
  if (s == "spatial") return SweepKind::spatial;
  if (s == "coupled") return SweepKind::coupled;
  throw ConfigError("unknown sweep mode '" + s + "'");
}

struct ReferenceSpec {
  double tau = 1e-4;
  std::size_t n = 0;             // 0: same as the experiment grid (temporal) or 2 max(sweep N)
  std::size_t substeps = 16;     // first-step substeps at reference resolution only
  bool analytic = false;
  bool operator==(const ReferenceSpec&) const = default;
};

struct ExperimentSpec {
  std::string name = "experiment";
  Grid grid = Grid::line(-16, 16, 512);
  PotentialSpec potential;
  double beta = 0.0;
  double sigma = 1.0;
  DatumSpec initial;
  double T = 1.0;
  std::size_t first_step_substeps = 1;
  std::size_t oversample = 4;

  SweepKind kind = SweepKind::temporal;
  std::vector<double> taus;      // temporal, coupled
  std::vector<std::size_t> ns;   // spatial
  double fixed_tau = 1e-4;       // spatial rows
  double coupling_c = 10.0;      // coupled: tau = h^2 / c
  bool couple_grid = true;       // coupled: false keeps grid.n for every row
  ReferenceSpec reference;

  bool operator==(const ExperimentSpec&) const = default;

  Potential potential_fn() const { return make_potential(potential); }
  Nonlinearity nonlinearity() const { return Nonlinearity(beta, sigma); }
  FieldFunction datum() const { return make_initial_datum(initial); }

  /// Mode count used by coupled row `tau`: h = sqrt(c tau) rounded to the
  /// nearest power-of-two subdivision of the box.
  std::size_t coupled_modes(double tau) const {
    double h = std::sqrt(coupling_c * tau);
    double raw = grid.axis(0).length() / h;
    double k = std::round(std::log2(raw));
    return std::max<std::size_t>(4, static_cast<std::size_t>(std::ldexp(1.0, static_cast<int>(k))));
  }

  std::size_t max_sweep_modes() const {
    switch (kind) {
      case SweepKind::spatial: return ns.empty() ? grid.axis(0).n : *std::max_element(ns.begin(), ns.end());
      case SweepKind::coupled: {
        if (!couple_grid) return grid.axis(0).n;
        std::size_t m = 0;
        for (double t : taus) m = std::max(m, coupled_modes(t));
        return m;
      }
      case SweepKind::temporal: break;
    }
    return grid.axis(0).n;
  }

  std::size_t reference_modes() const {
    if (reference.n) return reference.n;
    return kind == SweepKind::temporal ? grid.axis(0).n : 2 * max_sweep_modes();
  }

  Grid reference_grid() const { return grid.with_modes(reference_modes()); }

  double min_sweep_tau() const {
    if (kind == SweepKind::spatial) return fixed_tau;
    return taus.empty() ? fixed_tau : *std::min_element(taus.begin(), taus.end());
  }

  void validate() const {
    if (!(T >= 0.0)) throw ConfigError(name + ": T must be >= 0");
    if (oversample < 1) throw ConfigError(name + ": oversample must be >= 1");
    if (kind == SweepKind::spatial) {
      if (ns.size() < 2) throw ConfigError(name + ": spatial sweep needs at least two N");
      for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) throw ConfigError(name + ": sweep N must be strictly increasing");
      SolverConfig{.tau = fixed_tau, .T = T}.validate();
      (void)SolverConfig{.tau = fixed_tau, .T = T}.steps();
    } else {
      if (taus.size() < 2) throw ConfigError(name + ": time sweep needs at least two tau");
      for (std::size_t i = 1; i < taus.size(); ++i)
        if (taus[i] >= taus[i - 1]) throw ConfigError(name + ": sweep tau must be strictly decreasing");
      for (double t : taus) (void)SolverConfig{.tau = t, .T = T}.steps();
      if (kind == SweepKind::coupled && !(coupling_c > 0)) throw ConfigError(name + ": coupling_c must be > 0");
    }
    if (!reference.analytic) {
      (void)SolverConfig{.tau = reference.tau, .T = T}.steps();
      if (kind == SweepKind::spatial) {
        if (reference.tau > fixed_tau * (1 + 1e-12))
          throw ConfigError(name + ": reference tau must not exceed the fixed sweep tau");
        if (reference_modes() < 2 * max_sweep_modes())
          throw ConfigError(name + ": reference N must be >= 2 max(sweep N)");
      } else {
        if (reference.tau > min_sweep_tau() / 8 * (1 + 1e-12))
          throw ConfigError(name + ": reference tau must be <= min(sweep tau)/8");
        std::size_t need = kind == SweepKind::coupled && couple_grid ? 2 * max_sweep_modes() : grid.axis(0).n;
        if (reference_modes() < need) throw ConfigError(name + ": reference grid too coarse for the sweep");
      }
    }
  }

  /// Text form of everything that determines the reference field.
  std::string reference_key() const {
    std::string s;
    auto add = [&](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
    Grid rg = reference_grid();
    add("dims", std::to_string(rg.dims()));
    for (int d = 0; d < rg.dims(); ++d) {
      add("a", fmt_real(rg.axis(d).a));
      add("b", fmt_real(rg.axis(d).b));
      add("n", std::to_string(rg.axis(d).n));
    }
    add("potential", potential.key);
    add("potential_value", fmt_real(potential.value));
    add("potential_height", fmt_real(potential.height));
    add("potential_half_width", fmt_real(potential.half_width));
    add("beta", fmt_real(beta));
    add("sigma", fmt_real(sigma));
    add("initial", initial.key);
    add("initial_power", fmt_real(initial.power));
    add("T", fmt_real(T));
    add("oversample", std::to_string(oversample));
    add("analytic", reference.analytic ? "1" : "0");
    if (!reference.analytic) {
      add("tau_ref", fmt_real(reference.tau));
      add("ref_substeps", std::to_string(reference.substeps));
    }
    return s;
  }

  std::string hash() const;
};

/// 64-bit FNV-1a, hex encoded.
inline std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string ExperimentSpec::hash() const { return content_hash(reference_key()); }

inline std::filesystem::path cache_root() {
  if (const char* env = std::getenv("SEWI_CACHE_DIR"); env && *env) return env;
  return "cache";
}

struct ReferenceResult {
  SpectralField field;
  bool from_cache = false;
  bool analytic = false;
  std::vector<std::string> warnings;
  std::filesystem::path cache_dir;
};

namespace detail {

inline RunReport run_spec(const ExperimentSpec& spec, const Grid& grid, double tau, std::size_t substeps,
                          bool compute_energy = false) {
  SolverConfig cfg{.tau = tau, .T = spec.T, .first_step_substeps = substeps, .oversample = spec.oversample};
  EvolveOptions opts;
  opts.compute_energy = compute_energy;
  return evolve(spec.datum(), grid, cfg, spec.potential_fn(), spec.nonlinearity(), opts);
}

inline void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Closed-form reference where one exists: free flight for beta = 0, V = 0,
/// and the initial datum itself at T = 0.
inline std::optional<SpectralField> analytic_reference(const ExperimentSpec& spec) {
  Grid rg = spec.reference_grid();
  auto psi0 = project_from_function(spec.datum(), rg, spec.oversample);
  if (spec.T == 0.0) return psi0;
  if (spec.beta == 0.0 && spec.potential.key == "zero") return free_propagator(psi0, spec.T);
  return std::nullopt;
}

/// Reference field at time T on the reference grid. Results are cached in
/// `<root>/<hash>/reference.sewi` next to the key text that produced them.
inline ReferenceResult reference_solution(const ExperimentSpec& spec,
                                          const std::optional<std::filesystem::path>& root = std::nullopt,
                                          bool use_cache = true) {
  spec.validate();
  ReferenceResult res;
  if (spec.reference.analytic) {
    auto f = analytic_reference(spec);
    if (!f) throw ConfigError(spec.name + ": no closed-form solution is available for this problem");
    res.field = std::move(*f);
    res.analytic = true;
    return res;
  }
  namespace fs = std::filesystem;
  res.cache_dir = (root ? *root : cache_root()) / spec.hash();
  const fs::path file = res.cache_dir / "reference.sewi";
  const Grid rg = spec.reference_grid();
  if (use_cache && fs::exists(file)) {
    try {
      SpectralField f = read_snapshot(file);
      if (!(f.grid() == rg)) throw IoError("grid mismatch");
      res.field = std::move(f);
      res.from_cache = true;
      return res;
    } catch (const IoError& e) {
      res.warnings.push_back("reference cache " + file.string() + " unreadable (" + e.what() + "), recomputing");
    }
  }
  RunReport r = detail::run_spec(spec, rg, spec.reference.tau, spec.reference.substeps);
  res.field = std::move(r.final_state);
  for (auto& w : r.warnings) res.warnings.push_back(std::move(w));
  if (use_cache) {
    try {
      fs::create_directories(res.cache_dir);
      detail::write_atomically(res.cache_dir / "spec.txt", spec.reference_key());
      detail::write_atomically(file, encode_snapshot(res.field));
    } catch (const std::exception& e) {
      res.warnings.push_back(std::string("could not write reference cache: ") + e.what());
    }
  }
  return res;
}

struct ConvergenceRow {
  double resolution = 0.0;  // tau (temporal, coupled) or h (spatial)
  double tau = 0.0;
  std::size_t n = 0;
  double e_l2 = std::numeric_limits<double>::quiet_NaN();
  double e_h1 = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> order_l2;  // against the previous row
  std::optional<double> order_h1;
  bool failed = false;
  std::string note;
};

struct ConvergenceTable {
  std::string name;
  SweepKind kind = SweepKind::temporal;
  std::vector<ConvergenceRow> rows;
  double slope_l2 = std::numeric_limits<double>::quiet_NaN();
  double slope_h1 = std::numeric_limits<double>::quiet_NaN();
  double floor_l2 = 0.0;
  double floor_h1 = 0.0;
  std::string reference_hash;
  std::vector<std::string> warnings;
  double wallclock_seconds = 0.0;
};

/// Least-squares slope of log(e) against log(r).
inline double fitted_slope(const std::vector<double>& r, const std::vector<double>& e) {
  const std::size_t n = r.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(r[i]), y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = static_cast<double>(n) * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (static_cast<double>(n) * sxy - sx * sy) / den;
}

/// Pairwise orders and least-squares slopes over rows whose errors clear ten
/// times the roundoff floor.
inline void finalize_orders(ConvergenceTable& t) {
  auto usable = [](const ConvergenceRow& r, double e, double floor) {
    return !r.failed && std::isfinite(e) && e > 10.0 * floor;
  };
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    auto& a = t.rows[i - 1];
    auto& b = t.rows[i];
    double lr = std::log(a.resolution / b.resolution);
    if (usable(a, a.e_l2, t.floor_l2) && usable(b, b.e_l2, t.floor_l2)) b.order_l2 = std::log(a.e_l2 / b.e_l2) / lr;
    if (usable(a, a.e_h1, t.floor_h1) && usable(b, b.e_h1, t.floor_h1)) b.order_h1 = std::log(a.e_h1 / b.e_h1) / lr;
  }
  std::vector<double> r2, e2, r1, e1;
  for (const auto& r : t.rows) {
    if (usable(r, r.e_l2, t.floor_l2)) {
      r2.push_back(r.resolution);
      e2.push_back(r.e_l2);
    }
    if (usable(r, r.e_h1, t.floor_h1)) {
      r1.push_back(r.resolution);
      e1.push_back(r.e_h1);
    }
  }
  t.slope_l2 = fitted_slope(r2, e2);
  t.slope_h1 = fitted_slope(r1, e1);
}

namespace detail {

inline ConvergenceTable sweep(const ExperimentSpec& spec, const std::optional<std::filesystem::path>& root,
                              bool use_cache) {
  auto start = std::chrono::steady_clock::now();
  ConvergenceTable table;
  table.name = spec.name;
  table.kind = spec.kind;
  ReferenceResult ref = reference_solution(spec, root, use_cache);
  table.warnings = ref.warnings;
  if (!ref.analytic) table.reference_hash = spec.hash();
  const double eps = std::numeric_limits<double>::epsilon();
  table.floor_l2 = 100 * eps * sobolev_norm(ref.field, 0.0);
  table.floor_h1 = 100 * eps * sobolev_norm(ref.field, 1.0);

  struct Point {
    double tau;
    std::size_t n;
    double res;
    std::string note;
  };
  std::vector<Point> pts;
  const double L = spec.grid.axis(0).length();
  switch (spec.kind) {
    case SweepKind::temporal:
      for (double t : spec.taus) pts.push_back({t, spec.grid.axis(0).n, t, ""});
      break;
    case SweepKind::spatial:
      for (std::size_t n : spec.ns) pts.push_back({spec.fixed_tau, n, L / static_cast<double>(n), ""});
      break;
    case SweepKind::coupled:
      for (double t : spec.taus) {
        std::size_t n = spec.couple_grid ? spec.coupled_modes(t) : spec.grid.axis(0).n;
        std::string note;
        if (spec.couple_grid) {
          double h = std::sqrt(spec.coupling_c * t), hn = L / static_cast<double>(n);
          if (std::abs(h - hn) > 1e-12 * h) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "h=%.6g rounded to %.6g (N=%zu)", h, hn, n);
            note = buf;
          }
        }
        pts.push_back({t, n, t, note});
      }
      break;
  }

  for (const auto& p : pts) {
    ConvergenceRow row;
    row.tau = p.tau;
    row.n = p.n;
    row.resolution = p.res;
    row.note = p.note;
    try {
      RunReport r = run_spec(spec, spec.grid.with_modes(p.n), p.tau, spec.first_step_substeps);
      row.e_l2 = sobolev_distance(r.final_state, ref.field, 0.0);
      row.e_h1 = sobolev_distance(r.final_state, ref.field, 1.0);
    } catch (const BlowUpError& e) {
      row.failed = true;
      row.note = "blow-up at step " + std::to_string(e.step());
    }
    table.rows.push_back(std::move(row));
  }
  finalize_orders(table);
  table.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return table;
}

}  // namespace detail

inline ConvergenceTable temporal_convergence(const ExperimentSpec& spec,
                                             const std::optional<std::filesystem::path>& root = std::nullopt,
                                             bool use_cache = true) {
  if (spec.kind != SweepKind::temporal) throw ConfigError(spec.name + ": not a temporal sweep");
  return detail::sweep(spec, root, use_cache);
}

inline ConvergenceTable spatial_convergence(const ExperimentSpec& spec,
                                            const std::optional<std::filesystem::path>& root = std::nullopt,
                                            bool use_cache = true) {
  if (spec.kind != SweepKind::spatial) throw ConfigError(spec.name + ": not a spatial sweep");
  return detail::sweep(spec, root, use_cache);
}

inline ConvergenceTable coupled_convergence(const ExperimentSpec& spec,
                                            const std::optional<std::filesystem::path>& root = std::nullopt,
                                            bool use_cache = true) {
  if (spec.kind != SweepKind::coupled) throw ConfigError(spec.name + ": not a coupled sweep");
  return detail::sweep(spec, root, use_cache);
}

inline ConvergenceTable convergence(const ExperimentSpec& spec,
                                    const std::optional<std::filesystem::path>& root = std::nullopt,
                                    bool use_cache = true) {
  return detail::sweep(spec, root, use_cache);
}

struct DriftSample {
  double t = 0.0;
  double rel_mass = 0.0;
  double rel_energy = 0.0;
};

struct ConservationSeries {
  double tau = 0.0;
  std::vector<DriftSample> samples;
  double max_mass = 0.0;
  double max_energy = 0.0;
  bool blew_up = false;
  std::size_t blow_up_step = 0;
  double mass0 = 0.0;
  double energy0 = 0.0;
  double wallclock_seconds = 0.0;

  /// Largest drift over samples with t in [lo, hi] (fractions of the run).
  double window_max(double lo, double hi, bool energy) const {
    if (samples.empty()) return 0.0;
    double t_end = samples.back().t, m = 0.0;
    for (const auto& s : samples)
      if (s.t >= lo * t_end && s.t <= hi * t_end) m = std::max(m, energy ? s.rel_energy : s.rel_mass);
    return m;
  }
};

/// Relative mass and energy drift against the initial values. Observables
/// are sampled every `sample_every` steps (0 picks about 1000 samples).
inline ConservationSeries conservation_run(const ExperimentSpec& spec, double T_long, double tau,
                                           std::size_t sample_every = 0) {
  auto start = std::chrono::steady_clock::now();
  ConservationSeries out;
  out.tau = tau;
  SolverConfig cfg{.tau = tau, .T = T_long, .first_step_substeps = spec.first_step_substeps, .oversample = spec.oversample};
  std::size_t steps = cfg.steps();
  cfg.snapshot_every = sample_every ? sample_every : std::max<std::size_t>(1, steps / 1000);
  auto to_series = [&](const RunReport& r) {
    out.mass0 = r.records.front().mass;
    out.energy0 = r.records.front().energy;
    for (const auto& rec : r.records) {
      DriftSample s{rec.t, std::abs(rec.mass - out.mass0) / std::abs(out.mass0),
                    std::abs(rec.energy - out.energy0) / std::abs(out.energy0)};
      out.max_mass = std::max(out.max_mass, s.rel_mass);
      out.max_energy = std::max(out.max_energy, s.rel_energy);
      out.samples.push_back(s);
    }
  };
  try {
    RunReport r = evolve(spec.datum(), spec.grid, cfg, spec.potential_fn(), spec.nonlinearity());
    to_series(r);
  } catch (const EvolveBlowUp& e) {
    to_series(e.partial());
    out.blew_up = true;
    out.blow_up_step = e.step();
  }
  out.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct ConservationStudy {
  std::string name;
  ConservationSeries coarse;  // tau
  ConservationSeries fine;    // tau / 2
  double mass_ratio = 0.0;
  double energy_ratio = 0.0;
};

/// Runs at tau and tau/2 sampled at the same times; ratios are coarse/fine.
inline ConservationStudy conservation_study(const ExperimentSpec& spec, double T_long, double tau,
                                            std::size_t samples = 1000) {
  ConservationStudy s;
  s.name = spec.name;
  std::size_t steps = SolverConfig{.tau = tau, .T = T_long}.steps();
  std::size_t every = std::max<std::size_t>(1, steps / std::max<std::size_t>(1, samples));
  s.coarse = conservation_run(spec, T_long, tau, every);
  s.fine = conservation_run(spec, T_long, tau / 2, 2 * every);
  s.mass_ratio = s.coarse.max_mass / s.fine.max_mass;
  s.energy_ratio = s.coarse.max_energy / s.fine.max_energy;
  return s;
}

struct BenchmarkResult {
  RunReport report;
  ConservationSeries drift;
  SpectralField initial;
  bool analytic_available = false;
  std::string note;
};

/// Benchmark soliton: beta = -2, sigma = 1, V = 0 on (-16, 16). Only the
/// initial closed form is coded, so the run is judged by mass and energy
/// drift and the final density.
inline BenchmarkResult benchmark_soliton(double tau, std::size_t n, double T, std::size_t substeps = 16) {
  if (T > 200.0) throw ConfigError("benchmark: T must be <= 200");
  ExperimentSpec spec;
  spec.name = "benchmark_soliton";
  spec.grid = Grid::line(-16, 16, n);
  spec.beta = -2.0;
  spec.sigma = 1.0;
  spec.initial = {.key = "benchmark_soliton"};
  spec.first_step_substeps = substeps;
  BenchmarkResult b;
  b.initial = project_from_function(spec.datum(), spec.grid);
  SolverConfig cfg{.tau = tau, .T = T, .first_step_substeps = substeps,
                   .snapshot_every = std::max<std::size_t>(1, SolverConfig{.tau = tau, .T = T}.steps() / 1000)};
  b.report = evolve(b.initial, spec.grid, cfg, spec.potential_fn(), spec.nonlinearity());
  auto& d = b.drift;
  d.tau = tau;
  d.mass0 = b.report.records.front().mass;
  d.energy0 = b.report.records.front().energy;
  for (const auto& rec : b.report.records) {
    DriftSample s{rec.t, std::abs(rec.mass - d.mass0) / std::abs(d.mass0),
                  std::abs(rec.energy - d.energy0) / std::abs(d.energy0)};
    d.max_mass = std::max(d.max_mass, s.rel_mass);
    d.max_energy = std::max(d.max_energy, s.rel_energy);
    d.samples.push_back(s);
  }
  d.wallclock_seconds = b.report.wallclock_seconds;
  b.note = "analytic trajectory not available; reporting mass/energy drift and density snapshots";
  return b;
}

/// Experiment catalogue. Desk scale unless `paper_scale` is set.
namespace experiments {

inline ExperimentSpec good(SweepKind kind, bool paper_scale = false) {
  ExperimentSpec s;
  s.potential = {.key = "h2bump"};
  s.beta = 1.0;
  s.sigma = 1.1;
  s.initial = {.key = "odd_power_gaussian", .power = 2.51};
  s.T = 1.0;
  s.kind = kind;
  s.reference.tau = paper_scale ? 1e-5 : 1e-4;
  if (kind == SweepKind::temporal) {
    s.name = "good_temporal";
    s.grid = Grid::line(-16, 16, paper_scale ? 16384 : 512);
    s.taus = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  } else {
    s.name = "good_spatial";
    s.grid = Grid::line(-16, 16, 32);
    s.ns = {32, 64, 128, 256, 512};
    s.fixed_tau = s.reference.tau;
  }
  return s;
}

inline ExperimentSpec lowreg_1d(bool paper_scale = false) {
  ExperimentSpec s;
  s.name = "lowreg_1d_temporal";
  s.grid = Grid::line(-16, 16, paper_scale ? 16384 : 512);
  s.potential = {.key = "box1d", .height = 10.0, .half_width = 4.0};
  s.beta = 1.0;
  s.sigma = 0.1;
  s.initial = {.key = "odd_power_gaussian", .power = 0.51};
  s.T = 0.25;
  s.kind = SweepKind::temporal;
  s.taus = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  s.reference.tau = paper_scale ? 1e-5 : 1e-4;
  return s;
}

inline ExperimentSpec lowreg_2d(bool paper_scale = false) {
  ExperimentSpec s;
  s.name = "lowreg_2d_spatial";
  s.grid = Grid::square(-8, 8, 16);
  s.potential = {.key = "box2d", .height = 10.0, .half_width = 2.0};
  s.beta = 1.0;
  s.sigma = 0.1;
  s.initial = {.key = "odd_power_gaussian", .power = 0.51};
  s.T = 0.25;
  s.kind = SweepKind::spatial;
  s.ns = {16, 32, 64, 128};
  s.reference.tau = paper_scale ? 1e-5 : 1e-4;
  s.fixed_tau = s.reference.tau;
  return s;
}

inline ExperimentSpec improved(bool coupled = true, double sigma = 0.5, bool paper_scale = false) {
  ExperimentSpec s;
  s.name = coupled ? "improved_coupled" : "improved_fixed_h";
  s.grid = Grid::line(-16, 16, paper_scale ? 16384 : 1024);
  s.beta = -1.0;
  s.sigma = sigma;
  s.initial = {.key = "odd_power_gaussian", .power = 2.51};
  s.T = 1.0;
  s.kind = SweepKind::coupled;
  s.couple_grid = coupled;
  s.coupling_c = 10.0;
  // h = sqrt(10 tau) = 1/4 ... 1/32
  s.taus = {6.25e-3, 1.5625e-3, 3.90625e-4, 9.765625e-5};
  s.reference.tau = paper_scale ? 1e-5 : 1.220703125e-5;
  if (paper_scale) s.reference.n = 16384;
  if (!coupled) s.reference.n = s.grid.axis(0).n;
  return s;
}

inline ExperimentSpec long_time(bool low_regularity) {
  ExperimentSpec s;
  s.name = low_regularity ? "long_time_low" : "long_time_good";
  s.grid = Grid::line(-16, 16, 512);
  s.beta = 1.0;
  s.sigma = low_regularity ? 0.1 : 1.1;
  s.potential = low_regularity ? PotentialSpec{.key = "box1d", .height = 10.0, .half_width = 4.0}
                               : PotentialSpec{.key = "h2bump"};
  s.initial = {.key = "gaussian_odd"};
  s.T = 50.0;
  s.first_step_substeps = 1;
  return s;
}

}  // namespace experiments

}  // namespace sewi
