#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sewi/error.hpp"
#include "sewi/field.hpp"
#include "sewi/grid.hpp"

namespace sewi {

/// rho^s for rho >= 0, s > 0, as exp(s log rho); exactly 0 below 1e-300.
inline double guarded_pow(double rho, double s) {
  if (rho < 1e-300) return 0.0;
  return std::exp(s * std::log(rho));
}

/// Power nonlinearity f(rho) = beta rho^sigma with interaction energy
/// density F(rho) = beta rho^(sigma+1) / (sigma+1).
class Nonlinearity {
 public:
  Nonlinearity() = default;
  Nonlinearity(double beta, double sigma) : beta_(beta), sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("nonlinearity: sigma must be > 0");
    if (!std::isfinite(beta)) throw ConfigError("nonlinearity: beta must be finite");
  }

  double beta() const { return beta_; }
  double sigma() const { return sigma_; }

  double f(double rho) const { return beta_ * guarded_pow(rho, sigma_); }
  double F(double rho) const { return beta_ * guarded_pow(rho, sigma_ + 1.0) / (sigma_ + 1.0); }
  /// f'(rho) rho, finite at rho = 0.
  double fprime_times_rho(double rho) const { return beta_ * sigma_ * guarded_pow(rho, sigma_); }
  /// G(z) = f'(|z|^2) z^2, with G(0) = 0.
  cplx G(cplx z) const {
    double rho = std::norm(z);
    if (rho < 1e-300) return {};
    return beta_ * sigma_ * std::exp((sigma_ - 1.0) * std::log(rho)) * z * z;
  }

  bool operator==(const Nonlinearity&) const = default;

 private:
  double beta_ = 0.0;
  double sigma_ = 1.0;
};

enum class Regularity { Linf, H2_per, smooth };

inline const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Linf: return "Linf";
    case Regularity::H2_per: return "H2_per";
    case Regularity::smooth: return "smooth";
  }
  return "?";
}

/// Real external potential. Box potentials take the value `height` on a
/// closed region (boundary points included) and 0 elsewhere.
class Potential {
 public:
  enum class Kind { zero, constant, box, h2bump, custom };
  using Fn = std::function<double(const Point&)>;

  static Potential zero() {
    return Potential(Kind::zero, Regularity::smooth, [](const Point&) { return 0.0; }, 0.0);
  }

  static Potential constant(double v) {
    return Potential(Kind::constant, Regularity::smooth, [v](const Point&) { return v; }, v);
  }

  /// Height on |x| >= r when `outside`, on |x| <= r otherwise.
  static Potential box1d(double height, double r, bool outside) {
    return Potential(Kind::box, Regularity::Linf,
                     [=](const Point& p) {
                       double ax = std::abs(p[0]);
                       return (outside ? ax >= r : ax <= r) ? height : 0.0;
                     },
                     height);
  }

  /// Height on the closed rectangle |x| <= rx, |y| <= ry.
  static Potential box2d(double height, double rx, double ry) {
    return Potential(Kind::box, Regularity::Linf,
                     [=](const Point& p) { return std::abs(p[0]) <= rx && std::abs(p[1]) <= ry ? height : 0.0; },
                     height);
  }

  /// sign(x^2-4) |x^2-4|^1.51 / 16^1.51 * (1 - x^2/256)^2, an H^2 but not
  /// H^3 potential on (-16, 16) with kinks at |x| = 2.
  static Potential h2bump() {
    return Potential(Kind::h2bump, Regularity::H2_per,
                     [](const Point& p) {
                       double x = p[0];
                       double s = x * x - 4.0;
                       double base = std::copysign(std::pow(std::abs(s) / 16.0, 1.51), s);
                       double w = 1.0 - x * x / 256.0;
                       return base * w * w;
                     },
                     0.0);
  }

  static Potential custom(Fn fn, Regularity reg = Regularity::Linf) {
    return Potential(Kind::custom, reg, std::move(fn), 0.0);
  }

  Kind kind() const { return kind_; }
  Regularity regularity() const { return regularity_; }
  /// Constant value, or box height.
  double level() const { return level_; }

  double operator()(const Point& p) const { return fn_(p); }

  std::vector<double> sample(const Grid& g) const {
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn_(g.node(i));
    return out;
  }

 private:
  Potential(Kind k, Regularity r, Fn fn, double level)
      : kind_(k), regularity_(r), fn_(std::move(fn)), level_(level) {}

  Kind kind_;
  Regularity regularity_;
  Fn fn_;
  double level_;
};

/// B(u) = V u + f(|u|^2) u, pointwise.
inline void apply_B(std::span<const cplx> u, std::span<const double> V, const Nonlinearity& nl, std::span<cplx> out) {
  if (u.size() != V.size() || out.size() != u.size()) throw DimensionError("apply_B: grid mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (V[i] + nl.f(std::norm(u[i]))) * u[i];
}

inline std::vector<cplx> apply_B(std::span<const cplx> u, std::span<const double> V, const Nonlinearity& nl) {
  std::vector<cplx> out(u.size());
  apply_B(u, V, nl, out);
  return out;
}

/// Derivative of B at v in direction w along real epsilon:
/// V w + f(|v|^2) w + f'(|v|^2)|v|^2 w + G(v) conj(w).
inline std::vector<cplx> gateaux_dB(std::span<const cplx> v, std::span<const cplx> w, std::span<const double> V,
                                    const Nonlinearity& nl) {
  if (v.size() != w.size() || v.size() != V.size()) throw DimensionError("gateaux_dB: grid mismatch");
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double rho = std::norm(v[i]);
    out[i] = (V[i] + nl.f(rho) + nl.fprime_times_rho(rho)) * w[i] + nl.G(v[i]) * std::conj(w[i]);
  }
  return out;
}

/// M(u) = int |u|^2, via Parseval.
inline double mass(const SpectralField& u) {
  double s = 0.0;
  for (cplx c : u.coeffs()) s += std::norm(c);
  return u.grid().volume() * s;
}

struct EnergyParts {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;
  double total() const { return kinetic + potential + interaction; }
};

/// Energy functional with the potential pre-sampled on the oversampled
/// quadrature grid. Kinetic part spectrally; potential and interaction
/// parts by the trapezoid rule on the oversample*N grid.
class EnergyFunctional {
 public:
  EnergyFunctional(const Grid& g, const Potential& V, const Nonlinearity& nl, std::size_t oversample = 4)
      : grid_(g), fine_(g.refined(oversample)), nl_(nl), mu2_(g.mu_squared()),
        trivial_(V.kind() == Potential::Kind::zero && nl.beta() == 0.0) {
    if (!trivial_) {
      v_ = V.sample(fine_);
      fft_.emplace(fine_);
    }
  }

  EnergyParts parts(const SpectralField& u) {
    if (!(u.grid() == grid_)) throw DimensionError("energy: field grid does not match");
    EnergyParts e;
    auto c = u.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) e.kinetic += mu2_[k] * std::norm(c[k]);
    e.kinetic *= grid_.volume();
    if (trivial_) return e;

    auto buf = fft_->data();
    detail::copy_common_modes(grid_, c, fine_, buf);
    fft_->backward();
    const double cell = fine_.volume() / static_cast<double>(fine_.size());
    for (std::size_t i = 0; i < buf.size(); ++i) {
      double rho = std::norm(buf[i]);
      e.potential += v_[i] * rho;
      e.interaction += nl_.F(rho);
    }
    e.potential *= cell;
    e.interaction *= cell;
    return e;
  }

  double operator()(const SpectralField& u) { return parts(u).total(); }

 private:
  Grid grid_;
  Grid fine_;
  Nonlinearity nl_;
  std::vector<double> mu2_;
  bool trivial_;
  std::vector<double> v_;
  std::optional<Fft> fft_;
};

inline EnergyParts energy_parts(const SpectralField& u, const Potential& V, const Nonlinearity& nl,
                                std::size_t oversample = 4) {
  return EnergyFunctional(u.grid(), V, nl, oversample).parts(u);
}

inline double energy(const SpectralField& u, const Potential& V, const Nonlinearity& nl, std::size_t oversample = 4) {
  return energy_parts(u, V, nl, oversample).total();
}

// Catalogue addressable by string keys from run configurations.

struct PotentialSpec {
  std::string key = "zero";
  double value = 0.0;        // constant
  double height = 10.0;      // box1d, box2d
  double half_width = -1.0;  // box1d default 4, box2d default 2
  bool operator==(const PotentialSpec&) const = default;
};

inline Potential make_potential(const PotentialSpec& spec) {
  if (spec.key == "zero") return Potential::zero();
  if (spec.key == "constant") return Potential::constant(spec.value);
  if (spec.key == "box1d") return Potential::box1d(spec.height, spec.half_width > 0 ? spec.half_width : 4.0, true);
  if (spec.key == "box2d") {
    double r = spec.half_width > 0 ? spec.half_width : 2.0;
    return Potential::box2d(spec.height, r, r);
  }
  if (spec.key == "h2bump") return Potential::h2bump();
  throw ConfigError("unknown potential '" + spec.key + "'");
}

struct DatumSpec {
  std::string key = "gaussian_odd";
  double power = 2.51;  // odd_power_gaussian exponent p
  bool operator==(const DatumSpec&) const = default;
};

/// x|x|^p e^{-|x|^2/2}, x the first coordinate.
inline FieldFunction odd_power_gaussian(double p) {
  return [p](const Point& q) {
    double x = q[0];
    double r2 = q[0] * q[0] + q[1] * q[1];
    return cplx{x * std::pow(std::abs(x), p) * std::exp(-r2 / 2.0), 0.0};
  };
}

inline FieldFunction gaussian_odd() {
  return [](const Point& q) {
    double r2 = q[0] * q[0] + q[1] * q[1];
    return cplx{q[0] * std::exp(-r2 / 2.0), 0.0};
  };
}

/// Two-soliton benchmark datum for beta = -2, sigma = 1 on (-16, 16).
inline FieldFunction benchmark_soliton() {
  return [](const Point& q) {
    double x = q[0];
    double num = 8.0 * (9.0 * std::exp(-4.0 * x) + 16.0 * std::exp(4.0 * x)) -
                 32.0 * (4.0 * std::exp(-2.0 * x) + 9.0 * std::exp(2.0 * x));
    double den = -128.0 + 4.0 * std::exp(-6.0 * x) + 16.0 * std::exp(6.0 * x) + 81.0 * std::exp(-2.0 * x) +
                 64.0 * std::exp(2.0 * x);
    return cplx{num / den, 0.0};
  };
}

inline FieldFunction make_initial_datum(const DatumSpec& spec) {
  if (spec.key == "odd_power_gaussian") return odd_power_gaussian(spec.power);
  if (spec.key == "gaussian_odd") return gaussian_odd();
  if (spec.key == "benchmark_soliton") return benchmark_soliton();
  throw ConfigError("unknown initial datum '" + spec.key + "'");
}

}  // namespace sewi
