#pragma once

// Closed-form test fields: finite sums of Gaussian x trigonometric atoms with
// exact Fourier transforms at arbitrary, off-lattice frequencies. These are
// the evaluation vehicle for the frequency-shear representation formula,
// whose shifted argument xi - t*eta never lies on a lattice.

#include <vector>

#include "hypokin/common.hpp"
#include "hypokin/field.hpp"

namespace hypokin {

/// amplitude * exp(-|x-cx|^2/(2 wx^2)) exp(-|v-cv|^2/(2 wv^2))
///           * exp(i kx.x) exp(i kv.v)
template <int D>
struct GaussAtom {
  cplx amplitude{1.0, 0.0};
  Vec<D> center_x{};
  Vec<D> center_v{};
  double width_x = 1.0;
  double width_v = 1.0;
  Vec<D> wave_x{};
  Vec<D> wave_v{};
};

template <int D>
class AnalyticField {
 public:
  AnalyticField() = default;
  explicit AnalyticField(std::vector<GaussAtom<D>> atoms) : atoms_(std::move(atoms)) {}

  const std::vector<GaussAtom<D>>& atoms() const { return atoms_; }
  void add(const GaussAtom<D>& a) { atoms_.push_back(a); }

  cplx evaluate(const Vec<D>& x, const Vec<D>& v) const {
    cplx s = 0.0;
    for (const auto& a : atoms_) {
      double qx = 0.0, qv = 0.0, ph = 0.0;
      for (int d = 0; d < D; ++d) {
        qx += sq(x[d] - a.center_x[d]);
        qv += sq(v[d] - a.center_v[d]);
        ph += a.wave_x[d] * x[d] + a.wave_v[d] * v[d];
      }
      s += a.amplitude *
           std::exp(-0.5 * qx / sq(a.width_x) - 0.5 * qv / sq(a.width_v)) *
           cplx(std::cos(ph), std::sin(ph));
    }
    return s;
  }

  /// F f(eta,xi) = int exp(-i(x.eta + v.xi)) f dx dv, in closed form
  cplx fourier_eval(const Vec<D>& eta, const Vec<D>& xi) const {
    cplx s = 0.0;
    for (const auto& a : atoms_) s += atom_fourier(a, eta, xi);
    return s;
  }

  /// F f(eta, xi - t*eta)
  cplx sheared_fourier_eval(const Vec<D>& eta, const Vec<D>& xi, double t) const {
    return fourier_eval(eta, axpy<D>(-t, eta, xi));
  }

  /// gradient of F f with respect to xi, in closed form
  std::array<cplx, D> fourier_grad_xi(const Vec<D>& eta, const Vec<D>& xi) const {
    std::array<cplx, D> g{};
    for (const auto& a : atoms_) {
      cplx base = atom_fourier(a, eta, xi);
      for (int d = 0; d < D; ++d) {
        // d/dxi of exp(-i(xi-kv).cv) exp(-wv^2 |xi-kv|^2 / 2)
        cplx factor(-sq(a.width_v) * (xi[d] - a.wave_v[d]), -a.center_v[d]);
        g[d] += factor * base;
      }
    }
    return g;
  }

  /// samples onto a grid (physical representation)
  PhaseField<D> sample(std::shared_ptr<const PhaseGrid<D>> grid) const {
    return PhaseField<D>::sample(
        grid, [this](const Vec<D>& x, const Vec<D>& v) { return evaluate(x, v); });
  }

 private:
  static cplx atom_fourier(const GaussAtom<D>& a, const Vec<D>& eta,
                           const Vec<D>& xi) {
    // per 1D factor: int e^{-i s u} e^{-(u-c)^2/(2w^2)} du
    //             = w sqrt(2 pi) e^{-i s c} e^{-w^2 s^2 / 2},  s = freq - wave
    double mag = 1.0, phase = 0.0;
    for (int d = 0; d < D; ++d) {
      double sx = eta[d] - a.wave_x[d];
      double sv = xi[d] - a.wave_v[d];
      mag *= std::exp(-0.5 * sq(a.width_x * sx) - 0.5 * sq(a.width_v * sv));
      phase -= sx * a.center_x[d] + sv * a.center_v[d];
    }
    double amp = std::pow(2.0 * pi * a.width_x * a.width_v, D);
    return a.amplitude * amp * mag * cplx(std::cos(phase), std::sin(phase));
  }

  std::vector<GaussAtom<D>> atoms_;
};

}  // namespace hypokin
