#pragma once

// The fixed smooth radial truncation chi used by every frequency decomposition
// in the library: chi(r) = 1 for |r| <= 1/2, 0 for |r| >= 1, C^infinity and
// monotone in between. Built from the classical exp(-1/u) smoothstep, so the
// sandwich 1_{|r|<=1/2} <= chi <= 1_{|r|<=1} holds exactly.

#include <functional>

#include "hypokin/common.hpp"

namespace hypokin {

namespace detail {

// S(u) = 0 for u<=0, 1 for u>=1, C^inf monotone; S(u) = 1/(1+e^{1/u-1/(1-u)}).
inline double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double g = 1.0 / u - 1.0 / (1.0 - u);
  if (g > 700.0) return 0.0;
  if (g < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(g));
}

inline double smoothstep_prime(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  double g = 1.0 / u - 1.0 / (1.0 - u);
  if (std::abs(g) > 700.0) return 0.0;
  // d/du S = (1/u^2 + 1/(1-u)^2) * e^g / (1+e^g)^2
  double sech_sq = 1.0 / (4.0 * sq(std::cosh(0.5 * g)));
  return (1.0 / sq(u) + 1.0 / sq(1.0 - u)) * sech_sq;
}

}  // namespace detail

inline double cutoff_chi(double r) { return detail::smoothstep(2.0 * (1.0 - std::abs(r))); }

inline double cutoff_chi_prime(double r) {
  double s = (r >= 0.0) ? 1.0 : -1.0;
  return detail::smoothstep_prime(2.0 * (1.0 - std::abs(r))) * (-2.0 * s);
}

/// A truncation profile handed to diagnostics that admit either the smooth
/// cutoff or (at p=2 only) the sharp indicator of [-1,1].
struct CutoffProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  bool sharp = false;

  static CutoffProfile smooth() {
    return {[](double r) { return cutoff_chi(r); },
            [](double r) { return cutoff_chi_prime(r); },
            false};
  }

  /// indicator of [-1,1]; valid only for L^2 diagnostics
  static CutoffProfile sharp_indicator() {
    return {[](double r) { return std::abs(r) <= 1.0 ? 1.0 : 0.0; },
            [](double) { return 0.0; },
            true};
  }
};

}  // namespace hypokin
