#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sewi/error.hpp"
#include "sewi/fft.hpp"
#include "sewi/field.hpp"
#include "sewi/model.hpp"
#include "sewi/phi.hpp"

namespace sewi {

/// Time-stepping parameters. `first_step_substeps` = 1 is the plain
/// first-order EWI start; m > 1 applies it m times with step tau/m.
/// `oversample` = 1 is the pseudospectral projection of B.
struct SolverConfig {
  double tau = 1e-3;
  double T = 1.0;
  std::size_t first_step_substeps = 16;
  std::size_t oversample = 4;
  /// Observables are recorded every this many steps (0: first and last only).
  std::size_t snapshot_every = 0;

  void validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("solver: tau must be > 0");
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("solver: T must be >= 0");
    if (first_step_substeps < 1) throw ConfigError("solver: first_step_substeps must be >= 1");
    if (oversample < 1) throw ConfigError("solver: oversample must be >= 1");
    steps();
  }

  /// T / tau as a whole number of steps; non-integer ratios are rejected.
  std::size_t steps() const {
    double q = T / tau;
    double n = std::nearbyint(q);
    if (std::abs(q - n) > 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, n))
      throw ConfigError("solver: T/tau = " + std::to_string(q) + " is not an integer step count");
    return static_cast<std::size_t>(n);
  }

  bool operator==(const SolverConfig&) const = default;
};

/// Raised when a step produces a non-finite coefficient.
class BlowUpError : public Error {
 public:
  BlowUpError(std::size_t step, std::shared_ptr<const SpectralField> last_finite)
      : Error("non-finite coefficients at step " + std::to_string(step)), step_(step),
        last_(std::move(last_finite)) {}

  std::size_t step() const { return step_; }
  /// Most recent finite field (may be null).
  const std::shared_ptr<const SpectralField>& last_finite_state() const { return last_; }

 private:
  std::size_t step_;
  std::shared_ptr<const SpectralField> last_;
};

/// Computes P_N B(u) by evaluating B on the oversample*N grid and
/// truncating the transform back to T_N.
class NonlinearProjector {
 public:
  NonlinearProjector(const Grid& g, const Potential& V, const Nonlinearity& nl, std::size_t oversample)
      : grid_(g), fine_(g.refined(oversample)), v_(V.sample(fine_)), nl_(nl), fft_(fine_),
        scale_(1.0 / static_cast<double>(fine_.size())) {}

  void apply(const SpectralField& u, SpectralField& out) {
    auto buf = fft_.data();
    detail::copy_common_modes(grid_, u.coeffs(), fine_, buf);
    fft_.backward();
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= v_[i] + nl_.f(std::norm(buf[i]));
    fft_.forward();
    detail::copy_common_modes(fine_, buf, grid_, out.coeffs());
    for (auto& c : out.coeffs()) c *= scale_;
  }

  const Grid& quadrature_grid() const { return fine_; }
  std::span<const double> potential_samples() const { return v_; }

 private:
  Grid grid_;
  Grid fine_;
  std::vector<double> v_;
  Nonlinearity nl_;
  Fft fft_;
  double scale_;
};

/// Two-step state advanced by the symmetric recursion.
struct SolverState {
  std::size_t n = 0;
  SpectralField current;   // psi^n
  SpectralField previous;  // psi^{n-1}, empty while n == 0
};

inline bool all_finite(std::span<const cplx> c) {
  return std::all_of(c.begin(), c.end(), [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

/// Symmetric Gautschi-type exponential wave integrator with Fourier
/// spectral discretization. Filter tables are built once for (grid, tau);
/// negative tau is accepted so the recursion can be run backwards.
///
///   psi^{n+1}_l = e^{-2 i tau mu^2} psi^{n-1}_l - 2 i tau e^{-i tau mu^2} phi_s(tau mu^2) w_l
///   psi^1_l     = e^{-i tau mu^2} psi^0_l - i tau phi1(-i tau mu^2) w_l
///
/// with w = P_N B(psi^n) and mu^2 = |mu_l|^2.
class Integrator {
 public:
  Integrator(const Grid& g, double tau, const Potential& V, const Nonlinearity& nl, std::size_t oversample = 4)
      : grid_(g), tau_(tau), projector_(g, V, nl, oversample), scratch_(g) {
    if (tau == 0.0 || !std::isfinite(tau)) throw ConfigError("integrator: tau must be finite and nonzero");
    auto mu2 = g.mu_squared();
    half_.resize(mu2.size());
    full_.resize(mu2.size());
    kick_.resize(mu2.size());
    for (std::size_t k = 0; k < mu2.size(); ++k) {
      double th = tau * mu2[k];
      half_[k] = std::polar(1.0, -th);
      full_[k] = std::polar(1.0, -2.0 * th);
      kick_[k] = cplx{0.0, -2.0 * tau} * half_[k] * phi_s(th);
    }
  }

  const Grid& grid() const { return grid_; }
  double tau() const { return tau_; }

  /// psi^1 from psi^0 by `substeps` first-order EWI steps of size tau/substeps.
  SpectralField first_step(const SpectralField& psi0, std::size_t substeps = 1) {
    check(psi0);
    if (substeps < 1) throw ConfigError("first_step: substeps must be >= 1");
    const double h = tau_ / static_cast<double>(substeps);
    auto mu2 = grid_.mu_squared();
    std::vector<cplx> prop(mu2.size());
    std::vector<cplx> drive(mu2.size());
    for (std::size_t k = 0; k < mu2.size(); ++k) {
      double th = h * mu2[k];
      prop[k] = std::polar(1.0, -th);
      drive[k] = cplx{0.0, -h} * phi1(cplx{0.0, -th});
    }
    SpectralField u = psi0;
    for (std::size_t s = 0; s < substeps; ++s) {
      projector_.apply(u, scratch_);
      auto c = u.coeffs();
      auto w = scratch_.coeffs();
      for (std::size_t k = 0; k < c.size(); ++k) c[k] = prop[k] * c[k] + drive[k] * w[k];
    }
    if (!all_finite(u.coeffs())) throw BlowUpError(1, std::make_shared<const SpectralField>(psi0));
    return u;
  }

  /// psi^{n+1} from (psi^{n-1}, psi^n). `step_index` is reported on blow-up.
  SpectralField step(const SpectralField& previous, const SpectralField& current, std::size_t step_index = 0) {
    check(previous);
    check(current);
    projector_.apply(current, scratch_);
    SpectralField next(grid_);
    auto out = next.coeffs();
    auto p = previous.coeffs();
    auto w = scratch_.coeffs();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = full_[k] * p[k] + kick_[k] * w[k];
    if (!all_finite(out)) throw BlowUpError(step_index, std::make_shared<const SpectralField>(current));
    return next;
  }

  /// Advances the state by one step: the first-step rule at n = 0, the
  /// symmetric recursion afterwards.
  void advance(SolverState& s, std::size_t substeps = 1) {
    if (s.n == 0) {
      SpectralField next = first_step(s.current, substeps);
      s.previous = std::exchange(s.current, std::move(next));
    } else {
      SpectralField next = step(s.previous, s.current, s.n + 1);
      s.previous = std::exchange(s.current, std::move(next));
    }
    ++s.n;
  }

  NonlinearProjector& projector() { return projector_; }

 private:
  void check(const SpectralField& u) const {
    if (!(u.grid() == grid_)) throw DimensionError("integrator: field grid does not match");
  }

  Grid grid_;
  double tau_;
  NonlinearProjector projector_;
  SpectralField scratch_;
  std::vector<cplx> half_;
  std::vector<cplx> full_;
  std::vector<cplx> kick_;
};

/// Convenience wrappers over a throwaway Integrator.
inline SpectralField first_step(const SpectralField& psi0, const SolverConfig& cfg, const Potential& V,
                                const Nonlinearity& nl) {
  Integrator integ(psi0.grid(), cfg.tau, V, nl, cfg.oversample);
  return integ.first_step(psi0, cfg.first_step_substeps);
}

inline SpectralField sewi_step(const SolverState& state, double tau, const Potential& V, const Nonlinearity& nl,
                               std::size_t oversample = 4) {
  if (state.n < 1) throw ConfigError("sewi_step: needs two time levels (n >= 1)");
  Integrator integ(state.current.grid(), tau, V, nl, oversample);
  return integ.step(state.previous, state.current, state.n + 1);
}

struct StabilityReport {
  double quantity = 0.0;
  bool warning = false;
  std::string message;
};

/// tau (sup|V| + |beta| (sup|psi0|^2)^sigma), the frozen-coefficient form of
/// the linear stability bound tau |V0 + f0| <= 1. Advisory only.
inline StabilityReport stability_check(double tau, const Grid& grid, const Potential& V, const Nonlinearity& nl,
                                       const SpectralField& psi0, std::size_t oversample = 4) {
  Grid fine = grid.refined(oversample);
  double vmax = 0.0;
  for (double v : V.sample(fine)) vmax = std::max(vmax, std::abs(v));
  double rmax = 0.0;
  for (cplx u : synthesize_on(psi0, fine)) rmax = std::max(rmax, std::norm(u));
  StabilityReport r;
  r.quantity = std::abs(tau) * (vmax + std::abs(nl.beta()) * guarded_pow(rmax, nl.sigma()));
  r.warning = r.quantity > 1.0;
  if (r.warning)
    r.message = "stability: tau*(sup|V| + |f(sup|psi0|^2)|) = " + std::to_string(r.quantity) + " exceeds 1";
  return r;
}

struct ObservableRecord {
  std::size_t n = 0;
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double l2_norm = 0.0;
  double h1_norm = 0.0;
  bool operator==(const ObservableRecord&) const = default;
};

struct RunReport {
  Grid grid;
  SolverConfig config;
  Nonlinearity nonlinearity;
  std::vector<ObservableRecord> records;
  std::vector<std::string> warnings;
  double wallclock_seconds = 0.0;
  SpectralField final_state;
  StabilityReport stability;
  bool blew_up = false;
  std::size_t blow_up_step = 0;
};

/// Read-only view passed to observers.
struct SnapshotView {
  std::size_t n;
  double t;
  const SpectralField& field;
};

using Observer = std::function<void(const SnapshotView&)>;

struct EvolveOptions {
  bool compute_energy = true;
  std::vector<Observer> observers;
};

/// Raised by evolve on blow-up; carries everything recorded so far.
class EvolveBlowUp : public BlowUpError {
 public:
  EvolveBlowUp(const BlowUpError& e, std::shared_ptr<const RunReport> partial)
      : BlowUpError(e), partial_(std::move(partial)) {}
  const RunReport& partial() const { return *partial_; }

 private:
  std::shared_ptr<const RunReport> partial_;
};

using InitialCondition = std::variant<FieldFunction, SpectralField>;

/// Projects psi0, takes the first step, then iterates the recursion to
/// n = T/tau. Observables are recorded and observers called at n = 0,
/// every `snapshot_every` steps, and at the final step.
inline RunReport evolve(const InitialCondition& psi0, const Grid& grid, const SolverConfig& cfg, const Potential& V,
                        const Nonlinearity& nl, const EvolveOptions& opts = {}) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.grid = grid;
  report.config = cfg;
  report.nonlinearity = nl;

  SolverState state;
  if (const auto* f = std::get_if<FieldFunction>(&psi0)) {
    state.current = project_from_function(*f, grid, cfg.oversample);
  } else {
    const auto& field = std::get<SpectralField>(psi0);
    if (!field.grid().same_box(grid)) throw DimensionError("evolve: initial field lives on another box");
    state.current = resample(field, grid);
  }

  report.stability = stability_check(cfg.tau, grid, V, nl, state.current, cfg.oversample);
  if (report.stability.warning) report.warnings.push_back(report.stability.message);

  std::optional<EnergyFunctional> energy_fn;
  if (opts.compute_energy) energy_fn.emplace(grid, V, nl, cfg.oversample);

  auto observe = [&](const SolverState& s) {
    ObservableRecord r;
    r.n = s.n;
    r.t = static_cast<double>(s.n) * cfg.tau;
    r.mass = mass(s.current);
    r.l2_norm = std::sqrt(r.mass);
    r.h1_norm = sobolev_norm(s.current, 1.0);
    r.energy = energy_fn ? (*energy_fn)(s.current) : std::numeric_limits<double>::quiet_NaN();
    report.records.push_back(r);
    for (const auto& obs : opts.observers) obs(SnapshotView{s.n, r.t, s.current});
  };

  const std::size_t steps = cfg.steps();
  observe(state);
  Integrator integ(grid, cfg.tau, V, nl, cfg.oversample);
  try {
    while (state.n < steps) {
      integ.advance(state, cfg.first_step_substeps);
      bool due = state.n == steps || (cfg.snapshot_every > 0 && state.n % cfg.snapshot_every == 0);
      if (due) observe(state);
    }
  } catch (const BlowUpError& e) {
    report.blew_up = true;
    report.blow_up_step = e.step();
    report.final_state = state.current;
    report.warnings.push_back(e.what());
    report.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    throw EvolveBlowUp(e, std::make_shared<const RunReport>(std::move(report)));
  }
  report.final_state = std::move(state.current);
  report.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sewi
