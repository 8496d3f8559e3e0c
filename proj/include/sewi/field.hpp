#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sewi/error.hpp"
#include "sewi/fft.hpp"
#include "sewi/grid.hpp"
#include "sewi/phi.hpp"

namespace sewi {

using Point = std::array<double, 2>;

/// Fourier coefficients u_l of u(x) = sum_l u_l e^{i mu_l (x - a)}, l in T_N,
/// stored in natural FFT order (see mode_of_slot).
class SpectralField {
 public:
  SpectralField() = default;

  explicit SpectralField(Grid g) : grid_(std::move(g)), coeffs_(grid_.size()) {}

  SpectralField(Grid g, std::vector<cplx> coeffs) : grid_(std::move(g)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size())
      throw DimensionError("SpectralField: coefficient count does not match grid");
  }

  const Grid& grid() const { return grid_; }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::vector<cplx>& storage() { return coeffs_; }

  cplx& mode(long l) { return coeffs_[slot_of_mode(l, grid_.axis(0).n)]; }
  cplx mode(long l) const { return coeffs_[slot_of_mode(l, grid_.axis(0).n)]; }

  cplx& mode(long lx, long ly) {
    return coeffs_[slot_of_mode(lx, grid_.axis(0).n) * grid_.axis(1).n + slot_of_mode(ly, grid_.axis(1).n)];
  }
  cplx mode(long lx, long ly) const {
    return coeffs_[slot_of_mode(lx, grid_.axis(0).n) * grid_.axis(1).n + slot_of_mode(ly, grid_.axis(1).n)];
  }

  bool operator==(const SpectralField&) const = default;

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

namespace detail {

/// Copies the modes two grids on the same box have in common; the rest of
/// `dst` is zeroed. Zero-padding when dst is finer, truncation when coarser.
inline void copy_common_modes(const Grid& src_grid, std::span<const cplx> src, const Grid& dst_grid,
                              std::span<cplx> dst) {
  std::fill(dst.begin(), dst.end(), cplx{});
  auto overlap = [](std::size_t ns, std::size_t nd, auto&& body) {
    long half = static_cast<long>(std::min(ns, nd) / 2);
    for (long l = -half; l < half; ++l) body(slot_of_mode(l, ns), slot_of_mode(l, nd));
  };
  if (src_grid.dims() == 1) {
    overlap(src_grid.axis(0).n, dst_grid.axis(0).n, [&](std::size_t ks, std::size_t kd) { dst[kd] = src[ks]; });
    return;
  }
  std::size_t nys = src_grid.axis(1).n;
  std::size_t nyd = dst_grid.axis(1).n;
  overlap(src_grid.axis(0).n, dst_grid.axis(0).n, [&](std::size_t kxs, std::size_t kxd) {
    overlap(nys, nyd, [&](std::size_t kys, std::size_t kyd) { dst[kxd * nyd + kyd] = src[kxs * nys + kys]; });
  });
}

inline void check_same_box(const Grid& a, const Grid& b) {
  if (!a.same_box(b)) throw DimensionError("fields live on different boxes");
}

}  // namespace detail

/// Discrete Fourier coefficients of grid samples, normalized so that the
/// constant c maps to u_0 = c.
inline SpectralField analyze(std::span<const cplx> samples, const Grid& grid) {
  if (samples.size() != grid.size()) throw DimensionError("analyze: sample count does not match grid");
  Fft fft(grid);
  auto buf = fft.data();
  std::copy(samples.begin(), samples.end(), buf.begin());
  fft.forward();
  SpectralField out(grid);
  const double scale = 1.0 / static_cast<double>(grid.size());
  std::transform(buf.begin(), buf.end(), out.coeffs().begin(), [scale](cplx c) { return c * scale; });
  return out;
}

/// Values at the grid nodes.
inline std::vector<cplx> synthesize(const SpectralField& field) {
  Fft fft(field.grid());
  auto buf = field.coeffs();
  std::copy(buf.begin(), buf.end(), fft.data().begin());
  fft.backward();
  return {fft.data().begin(), fft.data().end()};
}

/// Direct evaluation of the trigonometric sum at arbitrary points of the box.
inline std::vector<cplx> synthesize(const SpectralField& field, std::span<const Point> points) {
  const Grid& g = field.grid();
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!g.contains(points[p])) throw DomainError("synthesize: point outside the box");
    const Axis& ax = g.axis(0);
    std::vector<cplx> ex(ax.n);
    for (std::size_t k = 0; k < ax.n; ++k)
      ex[k] = std::polar(1.0, ax.mu(mode_of_slot(k, ax.n)) * (points[p][0] - ax.a));
    cplx sum{};
    if (g.dims() == 1) {
      for (std::size_t k = 0; k < ax.n; ++k) sum += field.coeffs()[k] * ex[k];
    } else {
      const Axis& ay = g.axis(1);
      std::vector<cplx> ey(ay.n);
      for (std::size_t k = 0; k < ay.n; ++k)
        ey[k] = std::polar(1.0, ay.mu(mode_of_slot(k, ay.n)) * (points[p][1] - ay.a));
      for (std::size_t kx = 0; kx < ax.n; ++kx) {
        cplx row{};
        for (std::size_t ky = 0; ky < ay.n; ++ky) row += field.coeffs()[kx * ay.n + ky] * ey[ky];
        sum += row * ex[kx];
      }
    }
    out[p] = sum;
  }
  return out;
}

/// Same function represented on `target` (same box): zero-padding or truncation.
inline SpectralField resample(const SpectralField& field, const Grid& target) {
  detail::check_same_box(field.grid(), target);
  SpectralField out(target);
  detail::copy_common_modes(field.grid(), field.coeffs(), target, out.coeffs());
  return out;
}

/// Values of `field` on the nodes of a finer grid over the same box.
inline std::vector<cplx> synthesize_on(const SpectralField& field, const Grid& fine) {
  return synthesize(resample(field, fine));
}

using FieldFunction = std::function<cplx(const Point&)>;

/// Sample values of `f` at every node of `grid`.
inline std::vector<cplx> sample(const FieldFunction& f, const Grid& grid) {
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

/// Approximate L2 projection onto T_N: sample on an oversample*N grid,
/// transform, truncate. Exact for functions already band-limited to T_N.
inline SpectralField project_from_function(const FieldFunction& f, const Grid& grid, std::size_t oversample = 4) {
  if (oversample < 1) throw ConfigError("project_from_function: oversample must be >= 1");
  Grid fine = grid.refined(oversample);
  return resample(analyze(sample(f, fine), fine), grid);
}

/// e^{it Laplacian}: multiplies mode l by e^{-i t |mu_l|^2}.
inline SpectralField free_propagator(const SpectralField& field, double t) {
  SpectralField out = field;
  auto mu2 = field.grid().mu_squared();
  auto c = out.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -t * mu2[k]);
  return out;
}

enum class Filter { phi_s, phi_c, phi1 };

/// Multiplies mode l by phi_s(tau|mu|^2), phi_c(tau|mu|^2) or
/// phi1(-i tau |mu|^2) (the latter is phi1(i tau Laplacian)).
inline SpectralField apply_filter(const SpectralField& field, Filter filter, double tau) {
  SpectralField out = field;
  auto mu2 = field.grid().mu_squared();
  auto c = out.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    double theta = tau * mu2[k];
    switch (filter) {
      case Filter::phi_s: c[k] *= phi_s(theta); break;
      case Filter::phi_c: c[k] *= phi_c(theta); break;
      case Filter::phi1: c[k] *= phi1(cplx{0.0, -theta}); break;
    }
  }
  return out;
}

/// Bessel-potential norm ((b-a)^d sum_l (1+|mu_l|^2)^alpha |u_l|^2)^{1/2}.
inline double sobolev_norm(const SpectralField& field, double alpha) {
  if (alpha < 0.0) throw ConfigError("sobolev_norm: alpha must be >= 0");
  auto mu2 = field.grid().mu_squared();
  auto c = field.coeffs();
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    double w = alpha == 0.0 ? 1.0 : std::pow(1.0 + mu2[k], alpha);
    sum += w * std::norm(c[k]);
  }
  return std::sqrt(field.grid().volume() * sum);
}

/// ||u - v||_{H^alpha} for fields on the same box, possibly with different
/// mode counts (missing modes count as zero).
inline double sobolev_distance(const SpectralField& u, const SpectralField& v, double alpha) {
  detail::check_same_box(u.grid(), v.grid());
  const Grid& big = u.grid().size() >= v.grid().size() ? u.grid() : v.grid();
  const Grid& small = u.grid().size() >= v.grid().size() ? v.grid() : u.grid();
  for (int d = 0; d < big.dims(); ++d)
    if (small.axis(d).n > big.axis(d).n) throw DimensionError("sobolev_distance: mode sets are not nested");
  SpectralField a = resample(u, big);
  SpectralField b = resample(v, big);
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t k = 0; k < ca.size(); ++k) ca[k] -= cb[k];
  return sobolev_norm(a, alpha);
}

}  // namespace sewi
