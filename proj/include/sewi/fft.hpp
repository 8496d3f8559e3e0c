#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <utility>

#include "sewi/grid.hpp"

namespace sewi {

using cplx = std::complex<double>;

namespace detail {
// The FFTW planner is not thread safe; execution is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place complex transform on the sample grid of `g`, owning an aligned
/// buffer and both plans. forward() computes sum_j u_j e^{-2 pi i k j / n},
/// backward() the unnormalized inverse.
class Fft {
 public:
  explicit Fft(const Grid& g) : size_(g.size()) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    std::lock_guard lock(detail::fftw_planner_mutex());
    if (g.dims() == 1) {
      int n = static_cast<int>(g.axis(0).n);
      fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      int nx = static_cast<int>(g.axis(0).n);
      int ny = static_cast<int>(g.axis(1).n);
      fwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_2d(nx, ny, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Fft(Fft&& o) noexcept
      : size_(o.size_), buf_(std::exchange(o.buf_, nullptr)), fwd_(std::exchange(o.fwd_, nullptr)),
        bwd_(std::exchange(o.bwd_, nullptr)) {}

  Fft& operator=(Fft&& o) noexcept {
    if (this != &o) {
      release();
      size_ = o.size_;
      buf_ = std::exchange(o.buf_, nullptr);
      fwd_ = std::exchange(o.fwd_, nullptr);
      bwd_ = std::exchange(o.bwd_, nullptr);
    }
    return *this;
  }

  ~Fft() { release(); }

  std::span<cplx> data() { return {reinterpret_cast<cplx*>(buf_), size_}; }
  std::size_t size() const { return size_; }

  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  void release() {
    if (buf_ == nullptr) return;
    std::lock_guard lock(detail::fftw_planner_mutex());
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
    fftw_free(buf_);
    buf_ = nullptr;
  }

  std::size_t size_ = 0;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

}  // namespace sewi
