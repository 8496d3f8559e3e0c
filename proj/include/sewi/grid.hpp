#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "sewi/error.hpp"

namespace sewi {

/// One periodic direction (a, b) resolved by an even number of modes.
struct Axis {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 4;

  double length() const { return b - a; }
  double spacing() const { return (b - a) / static_cast<double>(n); }
  double node(std::size_t j) const { return a + static_cast<double>(j) * spacing(); }

  /// Frequency of symmetric mode index l.
  double mu(long l) const { return 2.0 * std::numbers::pi * static_cast<double>(l) / (b - a); }

  bool operator==(const Axis&) const = default;
};

/// Map between storage slot k (natural FFT order) and symmetric mode index
/// l in {-n/2, ..., n/2-1}.
inline long mode_of_slot(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

inline std::size_t slot_of_mode(long l, std::size_t n) {
  return l >= 0 ? static_cast<std::size_t>(l) : static_cast<std::size_t>(l + static_cast<long>(n));
}

/// Tensor-product periodic box in one or two dimensions. Samples and
/// coefficients are stored row-major with the first axis slowest.
class Grid {
 public:
  Grid() : Grid(Axis{}) {}

  explicit Grid(Axis x) : dims_(1), axes_{x, Axis{}} { validate(); }

  Grid(Axis x, Axis y) : dims_(2), axes_{x, y} { validate(); }

  static Grid line(double a, double b, std::size_t n) { return Grid(Axis{a, b, n}); }

  static Grid square(double a, double b, std::size_t n) { return Grid(Axis{a, b, n}, Axis{a, b, n}); }

  int dims() const { return dims_; }
  const Axis& axis(int d) const { return axes_[static_cast<std::size_t>(d)]; }

  std::size_t size() const { return dims_ == 1 ? axes_[0].n : axes_[0].n * axes_[1].n; }

  /// Measure of the box, (b-a)^d.
  double volume() const {
    double v = 1.0;
    for (int d = 0; d < dims_; ++d) v *= axis(d).length();
    return v;
  }

  /// Same box with every mode count replaced by `n`.
  Grid with_modes(std::size_t n) const {
    if (dims_ == 1) return Grid(Axis{axes_[0].a, axes_[0].b, n});
    return Grid(Axis{axes_[0].a, axes_[0].b, n}, Axis{axes_[1].a, axes_[1].b, n});
  }

  /// Same box, mode count multiplied by `factor` in every direction.
  Grid refined(std::size_t factor) const {
    if (dims_ == 1) return Grid(Axis{axes_[0].a, axes_[0].b, axes_[0].n * factor});
    return Grid(Axis{axes_[0].a, axes_[0].b, axes_[0].n * factor},
                Axis{axes_[1].a, axes_[1].b, axes_[1].n * factor});
  }

  bool same_box(const Grid& o) const {
    if (dims_ != o.dims_) return false;
    for (int d = 0; d < dims_; ++d)
      if (axis(d).a != o.axis(d).a || axis(d).b != o.axis(d).b) return false;
    return true;
  }

  /// |mu|^2 for every coefficient slot; the Laplacian symbol is its negative.
  std::vector<double> mu_squared() const {
    std::vector<double> out(size());
    if (dims_ == 1) {
      const auto& ax = axes_[0];
      for (std::size_t k = 0; k < ax.n; ++k) {
        double m = ax.mu(mode_of_slot(k, ax.n));
        out[k] = m * m;
      }
      return out;
    }
    const auto& ax = axes_[0];
    const auto& ay = axes_[1];
    for (std::size_t kx = 0; kx < ax.n; ++kx) {
      double mx = ax.mu(mode_of_slot(kx, ax.n));
      for (std::size_t ky = 0; ky < ay.n; ++ky) {
        double my = ay.mu(mode_of_slot(ky, ay.n));
        out[kx * ay.n + ky] = mx * mx + my * my;
      }
    }
    return out;
  }

  /// Coordinates of sample node `idx` (row-major); unused components are 0.
  std::array<double, 2> node(std::size_t idx) const {
    if (dims_ == 1) return {axes_[0].node(idx), 0.0};
    std::size_t ny = axes_[1].n;
    return {axes_[0].node(idx / ny), axes_[1].node(idx % ny)};
  }

  bool contains(const std::array<double, 2>& p) const {
    for (int d = 0; d < dims_; ++d) {
      double x = p[static_cast<std::size_t>(d)];
      if (!(x >= axis(d).a && x <= axis(d).b)) return false;
    }
    return true;
  }

  bool operator==(const Grid& o) const {
    if (dims_ != o.dims_) return false;
    for (int d = 0; d < dims_; ++d)
      if (!(axis(d) == o.axis(d))) return false;
    return true;
  }

  std::string describe() const {
    std::string s;
    for (int d = 0; d < dims_; ++d) {
      if (d) s += " x ";
      s += "(" + std::to_string(axis(d).a) + "," + std::to_string(axis(d).b) + ")[" +
           std::to_string(axis(d).n) + "]";
    }
    return s;
  }

 private:
  void validate() const {
    for (int d = 0; d < dims_; ++d) {
      const auto& ax = axis(d);
      if (!(ax.b > ax.a) || !std::isfinite(ax.a) || !std::isfinite(ax.b))
        throw ConfigError("grid: need a < b in every direction");
      if (ax.n < 4 || ax.n % 2 != 0) throw ConfigError("grid: mode count must be even and >= 4");
    }
  }

  int dims_;
  std::array<Axis, 2> axes_;
};

}  // namespace sewi
