#pragma once

// Iterative radix-2 complex FFT for power-of-two lengths, plus a strided
// driver for transforming one axis of a flat tensor. Unitary normalization
// (1/sqrt(n) in both directions).

#include <vector>

#include "hypokin/common.hpp"

namespace hypokin {

/// Twiddle table for one transform length; reused across calls.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    if (!is_pow2(n) || n < 2) throw config_error("fft length must be a power of two >= 2");
    tw_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      double a = -2.0 * pi * double(k) / double(n);
      tw_[k] = cplx(std::cos(a), std::sin(a));
    }
    scale_ = 1.0 / std::sqrt(double(n));
  }

  std::size_t size() const { return n_; }

  /// In-place unitary transform; inverse uses conjugate twiddles.
  void run(cplx* a, bool forward) const {
    const std::size_t n = n_;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t step = n / len;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          cplx w = tw_[k * step];
          if (!forward) w = std::conj(w);
          cplx u = a[i + k];
          cplx v = a[i + k + len / 2] * w;
          a[i + k] = u + v;
          a[i + k + len / 2] = u - v;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) a[i] *= scale_;
  }

 private:
  std::size_t n_;
  double scale_;
  std::vector<cplx> tw_;
};

/// Transforms every line along one axis of a flat tensor.
///
/// The tensor has `total` elements; the axis has length `len` and stride
/// `stride` (in elements). Lines are enumerated deterministically and may run
/// in parallel since they are disjoint.
inline void fft_axis(cplx* data, std::size_t total, std::size_t len,
                     std::size_t stride, const FftPlan& plan, bool forward,
                     int workers = 1) {
  const std::size_t lines = total / len;
  const std::size_t block = len * stride;  // elements spanned by one axis run
  parallel_for(lines, workers, [&](std::size_t line) {
    // index of the first element of this line
    std::size_t outer = line / stride;
    std::size_t inner = line % stride;
    std::size_t base = outer * block + inner;
    std::vector<cplx> buf(len);
    for (std::size_t k = 0; k < len; ++k) buf[k] = data[base + k * stride];
    plan.run(buf.data(), forward);
    for (std::size_t k = 0; k < len; ++k) data[base + k * stride] = buf[k];
  });
}

}  // namespace hypokin
