#pragma once

#include <cmath>
#include <complex>

namespace sewi {

/// Below this magnitude the filter functions switch to their Taylor series.
inline constexpr double kSeriesThreshold = 1e-2;

/// (e^z - 1) / z, entire, phi1(0) = 1.
inline std::complex<double> phi1(std::complex<double> z) {
  if (std::abs(z) < kSeriesThreshold) {
    // sum_k z^k / (k+1)!, eight terms reach machine precision for |z| < 1e-2
    std::complex<double> acc = 1.0 / 362880.0;
    for (int k = 8; k >= 1; --k) {
      double inv = 1.0;
      for (int j = 2; j <= k; ++j) inv /= j;
      acc = acc * z + inv;
    }
    return acc;
  }
  return (std::exp(z) - 1.0) / z;
}

/// sin(theta) / theta.
inline double phi_s(double theta) {
  theta = std::abs(theta);
  if (std::abs(theta) < kSeriesThreshold) {
    double t2 = theta * theta;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
  }
  return std::sin(theta) / theta;
}

/// (theta cos(theta) - sin(theta)) / theta^3, with phi_c(0) = -1/3.
inline double phi_c(double theta) {
  theta = std::abs(theta);
  if (std::abs(theta) < kSeriesThreshold) {
    double t2 = theta * theta;
    // sum_{k>=1} (-1)^k 2k / (2k+1)! theta^(2k-2)
    return -1.0 / 3.0 + t2 / 30.0 - t2 * t2 / 840.0 + t2 * t2 * t2 / 45360.0;
  }
  return (theta * std::cos(theta) - std::sin(theta)) / (theta * theta * theta);
}

}  // namespace sewi
