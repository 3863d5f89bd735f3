#pragma once

// Builders for the named multiplier families of the phase-space decomposition:
// the nine symbols driving the compactness transfer and the eight driving the
// regularity transfer. Velocity-parameterized symbols are exposed in their
// rotation-reduced form, where v enters only through |v| and the direction
// eta_1/|eta| — these act on the space variable with v frozen.

#include <map>
#include <string>

#include "hypokin/common.hpp"
#include "hypokin/cutoff.hpp"
#include "hypokin/multiplier.hpp"
#include "hypokin/params.hpp"

namespace hypokin {

template <int D>
using SymbolSet = std::map<std::string, MultiplierSymbol<D>>;

namespace detail {

/// eta_1/|eta| with the convention 0 at eta = 0
template <int D>
inline double dir1(const Vec<D>& eta) {
  double n = norm<D>(eta);
  return n == 0.0 ? 0.0 : eta[0] / n;
}

/// profile (1-chi)(r)/r, extended by 0 through r = 0
inline double psi_profile(double r) {
  double w = 1.0 - cutoff_chi(r);
  return w == 0.0 ? 0.0 : w / r;
}

/// partial of eta_1/|eta| in eta_axis
template <int D>
inline double dir1_partial(const Vec<D>& eta, int axis) {
  double n = norm<D>(eta);
  double d = (axis == 0) ? 1.0 : 0.0;
  return (d * n * n - eta[0] * eta[axis]) / (n * n * n);
}

// cutoff rescaled to the sandwich 1_{|r|<=1} <= chi2 <= 1_{|r|<=2}, as the
// regularity construction requires
inline double chi2(double r) { return cutoff_chi(0.5 * r); }
inline double chi2_prime(double r) { return 0.5 * cutoff_chi_prime(0.5 * r); }
inline double psi2_profile(double r) {
  double w = 1.0 - chi2(r);
  return w == 0.0 ? 0.0 : w / r;
}

}  // namespace detail

struct CompactnessParams {
  double R;
  double delta;
  double L;
  double alpha;
  double beta;
  double s;      // integration variable of the source term, in [0,1]
  double v_mag;  // |v| of the rotation-reduced velocity-frozen symbols
  double K;      // derived
};

/// The nine compactness-split multipliers. m5 and m6 are vector symbols and
/// appear per component as m5_0..m5_{D-1}, m6_0..; their contraction, which
/// is what the elliptic estimate applies, is provided as "m5.m6".
template <int D>
SymbolSet<D> build_compactness_multipliers(double R, double delta, double L,
                                           double alpha, double beta, double s,
                                           double v_mag) {
  if (R <= 1.0) throw parameter_error("compactness multipliers: R must exceed 1");
  if (L <= 1.0) throw parameter_error("compactness multipliers: L must exceed 1");
  if (s < 0.0 || s > 1.0) throw parameter_error("compactness multipliers: s in [0,1]");
  const double K = k_of_r(R, delta, alpha, beta);
  if (K <= 1.0)
    throw parameter_error("compactness multipliers: K(R) <= 1; enlarge R or delta");

  std::map<std::string, double> rec = {{"R", R},     {"K", K},         {"delta", delta},
                                       {"L", L},     {"alpha", alpha}, {"beta", beta},
                                       {"s", s},     {"|v|", v_mag}};
  SymbolSet<D> set;
  auto put = [&](const std::string& name, MultiplierSymbol<D> m,
                 const std::string& hint, bool joint) {
    m.params = rec;
    m.support_hint = hint;
    m.joint = joint;
    set[name] = std::move(m);
  };

  // m1, m3: oscillating velocity-frozen symbols on the hypoelliptic zone
  auto osc = [K, L, v_mag](double time_scale) {
    return [K, L, v_mag, time_scale](const Vec<D>& eta) {
      double u = detail::dir1<D>(eta);
      double w = K * v_mag / L * u;
      double ph = time_scale * 2.0 * K * v_mag * u;
      return cutoff_chi(w) * cplx(std::cos(ph), std::sin(ph));
    };
  };
  put("m1", eta_symbol<D>(osc(1.0)), "K|v|/L |eta_1|/|eta| <= 1", false);
  put("m3", eta_symbol<D>(osc(s)), "K|v|/L |eta_1|/|eta| <= 1", false);

  // m2: high |eta| with the sheared xi-window; forces |xi| >= K
  {
    MultiplierSymbol<D> m;
    m.eval = [R, K](const Vec<D>& eta, const Vec<D>& xi) {
      double ne = norm<D>(eta);
      if (ne == 0.0) return cplx(0.0);
      Vec<D> w = axpy<D>(2.0 / ne, eta, scaled<D>(xi, 1.0 / K));
      return cplx((1.0 - cutoff_chi(ne / R)) * cutoff_chi(norm<D>(w)), 0.0);
    };
    put("m2", std::move(m), "|eta| >= R/2 and |xi| >= K", true);
  }

  // m4: m2's window at shear fraction s, carrying the source weights
  {
    MultiplierSymbol<D> m;
    m.eval = [R, K, alpha, beta, s](const Vec<D>& eta, const Vec<D>& xi) {
      double ne = norm<D>(eta);
      if (ne == 0.0) return cplx(0.0);
      Vec<D> w = axpy<D>(2.0 * s / ne, eta, scaled<D>(xi, 1.0 / K));
      double val = (1.0 - cutoff_chi(ne / R)) * cutoff_chi(norm<D>(w)) * 2.0 * K *
                   std::pow(bracket<D>(eta), beta) / ne * std::pow(bracket<D>(xi), alpha);
      return cplx(val, 0.0);
    };
    put("m4", std::move(m), "|eta| >= R/2 and |xi| <= 3K", true);
  }

  // m5: Riesz direction cut to high |eta| (vector symbol, per component)
  for (int d = 0; d < D; ++d) {
    MultiplierSymbol<D> m = eta_symbol<D>([R, d](const Vec<D>& eta) {
      double ne = norm<D>(eta);
      if (ne == 0.0) return cplx(0.0);
      return cplx((1.0 - cutoff_chi(ne / R)) * eta[d] / ne, 0.0);
    });
    m.deriv = [R, d](const Vec<D>& eta, const Vec<D>&, int axis) {
      double ne = norm<D>(eta);
      if (ne == 0.0 || axis >= D) return cplx(0.0);
      double c = 1.0 - cutoff_chi(ne / R);
      double dc = -cutoff_chi_prime(ne / R) / R * (eta[axis] / ne);
      double ddir = ((axis == d ? 1.0 : 0.0) * ne * ne - eta[d] * eta[axis]) /
                    (ne * ne * ne);
      return cplx(dc * eta[d] / ne + c * ddir, 0.0);
    };
    put("m5_" + std::to_string(d), std::move(m), "|eta| >= R/2", false);
  }

  // m6: chi'(|xi|/K) times the Riesz direction in xi (vector symbol)
  for (int d = 0; d < D; ++d) {
    put("m6_" + std::to_string(d), xi_symbol<D>([K, d](const Vec<D>& xi) {
          double nx = norm<D>(xi);
          if (nx == 0.0) return cplx(0.0);
          return cplx(cutoff_chi_prime(nx / K) * xi[d] / nx, 0.0);
        }),
        "K/2 <= |xi| <= K", true);
  }

  // the contraction m5.m6 entering the elliptic estimate
  {
    MultiplierSymbol<D> m;
    m.eval = [R, K](const Vec<D>& eta, const Vec<D>& xi) {
      double ne = norm<D>(eta), nx = norm<D>(xi);
      if (ne == 0.0 || nx == 0.0) return cplx(0.0);
      return cplx((1.0 - cutoff_chi(ne / R)) * cutoff_chi_prime(nx / K) *
                      dot<D>(eta, xi) / (ne * nx),
                  0.0);
    };
    put("m5.m6", std::move(m), "|eta| >= R/2 and K/2 <= |xi| <= K", true);
  }

  // m7: normalized Bessel weight at high |eta|
  {
    MultiplierSymbol<D> m = eta_symbol<D>([R, beta](const Vec<D>& eta) {
      double ne = norm<D>(eta);
      if (ne == 0.0) return cplx(0.0);
      return cplx((1.0 - cutoff_chi(ne / R)) * std::pow(R, 1.0 - beta) *
                      std::pow(bracket<D>(eta), beta) / ne,
                  0.0);
    });
    m.deriv = [R, beta](const Vec<D>& eta, const Vec<D>&, int axis) {
      double ne = norm<D>(eta);
      if (ne == 0.0 || axis >= D) return cplx(0.0);
      double br = bracket<D>(eta);
      double c = 1.0 - cutoff_chi(ne / R);
      double dc = -cutoff_chi_prime(ne / R) / R * (eta[axis] / ne);
      double core = std::pow(br, beta) / ne;
      double dcore = beta * std::pow(br, beta - 2.0) * eta[axis] / ne -
                     std::pow(br, beta) * eta[axis] / (ne * ne * ne);
      return cplx(std::pow(R, 1.0 - beta) * (dc * core + c * dcore), 0.0);
    };
    put("m7", std::move(m), "|eta| >= R/2", false);
  }

  // m8: normalized Bessel weight inside the xi-window
  put("m8", xi_symbol<D>([K, alpha](const Vec<D>& xi) {
        return cplx(cutoff_chi(norm<D>(xi) / K) *
                        std::pow(bracket<D>(xi), alpha) / std::pow(K, alpha),
                    0.0);
      }),
      "|xi| <= K", true);

  // m9: inverted transport factor on the elliptic zone,
  // psi(r) = (1-chi)(r)/r evaluated at r = (K|v|/L) eta_1/|eta|
  {
    MultiplierSymbol<D> m = eta_symbol<D>([K, L, v_mag](const Vec<D>& eta) {
      return cplx(detail::psi_profile(K * v_mag / L * detail::dir1<D>(eta)), 0.0);
    });
    m.deriv = [K, L, v_mag](const Vec<D>& eta, const Vec<D>&, int axis) {
      double ne = norm<D>(eta);
      if (ne == 0.0 || axis >= D) return cplx(0.0);
      double a = K * v_mag / L;
      double r = a * detail::dir1<D>(eta);
      double w = 1.0 - cutoff_chi(r);
      if (w == 0.0 && cutoff_chi_prime(r) == 0.0) return cplx(0.0);
      double dpsi = (-cutoff_chi_prime(r) * r - w) / (r * r);
      return cplx(dpsi * a * detail::dir1_partial<D>(eta, axis), 0.0);
    };
    put("m9", std::move(m), "K|v|/L |eta_1|/|eta| >= 1/2", false);
  }

  return set;
}

struct RegularityParams {
  double r;
  double sigma;
  double alpha;
  double s;
  double v_mag;
};

/// The eight regularity-split multipliers, with t(|eta|) solving
/// <t eta> = 2 <eta>^{sigma/r}. The cutoff here carries the wider sandwich
/// 1_{|u|<=1} <= chi <= 1_{|u|<=2} the construction assumes.
template <int D>
SymbolSet<D> build_regularity_multipliers(double r, double sigma, double alpha,
                                          double s, double v_mag) {
  if (r <= 0.0) throw parameter_error("regularity multipliers: r must be positive");
  if (s < 0.0 || s > 1.0) throw parameter_error("regularity multipliers: s in [0,1]");
  using detail::chi2;
  using detail::chi2_prime;
  const double e = sigma / r;

  std::map<std::string, double> rec = {
      {"r", r}, {"sigma", sigma}, {"alpha", alpha}, {"s", s}, {"|v|", v_mag}};
  SymbolSet<D> set;
  auto put = [&](const std::string& name, MultiplierSymbol<D> m,
                 const std::string& hint, bool joint) {
    m.params = rec;
    m.support_hint = hint;
    m.joint = joint;
    set[name] = std::move(m);
  };

  auto q_of = [sigma, r](const Vec<D>& eta, const Vec<D>& xi) {
    return std::pow(bracket<D>(eta), sigma) * std::pow(bracket<D>(xi), -r);
  };
  auto t_of = [sigma, r](const Vec<D>& eta) {
    return t_regularity(norm<D>(eta), sigma, r);
  };

  // m1: the bounded comparison symbol of the low/ordered zone
  {
    MultiplierSymbol<D> m;
    m.eval = [q_of](const Vec<D>& eta, const Vec<D>& xi) {
      double q = q_of(eta, xi);
      double ne = norm<D>(eta);
      return cplx(chi2(q) * q + chi2(ne) * (1.0 - chi2(q)) * q, 0.0);
    };
    put("m1", std::move(m), "<eta>^sigma <= 2 <xi>^r, or |eta| <= 2", true);
  }

  // m2, m4: oscillating velocity-frozen symbols of the hypoelliptic zone
  {
    MultiplierSymbol<D> m = eta_symbol<D>([t_of, v_mag](const Vec<D>& eta) {
      double w = t_of(eta) * v_mag * eta[0];
      double c = chi2(w) * (1.0 - chi2(norm<D>(eta)));
      return c * cplx(std::cos(w), std::sin(w));
    });
    put("m2", std::move(m), "t|v.eta| <= 2 and |eta| >= 1", false);
  }
  {
    MultiplierSymbol<D> m = eta_symbol<D>([t_of, v_mag, s, e](const Vec<D>& eta) {
      double t = t_of(eta);
      double w = t * v_mag * eta[0];
      double ne = norm<D>(eta);
      double c = chi2(w) * (1.0 - chi2(ne)) * t * std::pow(bracket(ne), 1.0 - e);
      return c * cplx(std::cos(s * w), std::sin(s * w));
    });
    put("m4", std::move(m), "t|v.eta| <= 2 and |eta| >= 1", false);
  }

  // m3, m5: sheared comparison windows
  {
    MultiplierSymbol<D> m;
    m.eval = [q_of, t_of, sigma, r](const Vec<D>& eta, const Vec<D>& xi) {
      double t = t_of(eta);
      Vec<D> sh = axpy<D>(t, eta, xi);
      double qs = std::pow(bracket<D>(eta), sigma) * std::pow(bracket<D>(sh), -r);
      return cplx((1.0 - chi2(qs)) * q_of(eta, xi), 0.0);
    };
    put("m3", std::move(m), "<xi + t eta>^r <= <eta>^sigma", true);
  }
  {
    MultiplierSymbol<D> m;
    m.eval = [t_of, sigma, r, alpha, s, e](const Vec<D>& eta, const Vec<D>& xi) {
      double t = t_of(eta);
      Vec<D> sh = axpy<D>(s * t, eta, xi);
      double qs = std::pow(bracket<D>(eta), sigma) * std::pow(bracket<D>(sh), -r);
      return cplx((1.0 - chi2(qs)) * std::pow(bracket<D>(eta), -e * alpha) *
                      std::pow(bracket<D>(xi), alpha),
                  0.0);
    };
    put("m5", std::move(m), "<xi + st eta>^r <= <eta>^sigma", true);
  }

  // m6: the integration-by-parts boundary symbol of the elliptic zone
  {
    MultiplierSymbol<D> m;
    m.eval = [q_of, r, e](const Vec<D>& eta, const Vec<D>& xi) {
      double q = q_of(eta, xi);
      double be = bracket<D>(eta), bx = bracket<D>(xi);
      return cplx(r * dot<D>(eta, xi) / (be * bx) * chi2_prime(q) *
                      std::pow(be, e * (2.0 * r + 1.0)) *
                      std::pow(bx, -(2.0 * r + 1.0)),
                  0.0);
    };
    put("m6", std::move(m), "<eta>^sigma comparable to <xi>^r", true);
  }

  // m7: phi(q) with phi(u) = (1-chi)(u) u^{-alpha/r}
  {
    MultiplierSymbol<D> m;
    m.eval = [q_of, alpha, r, e](const Vec<D>& eta, const Vec<D>& xi) {
      double q = q_of(eta, xi);
      return cplx((1.0 - chi2(q)) * std::pow(bracket<D>(eta), -e * alpha) *
                      std::pow(bracket<D>(xi), alpha),
                  0.0);
    };
    put("m7", std::move(m), "<eta>^sigma >= <xi>^r", true);
  }

  // m8: inverted transport factor, psi(w) = (1-chi)(w)/w at w = t v.eta
  {
    MultiplierSymbol<D> m = eta_symbol<D>([t_of, v_mag, e](const Vec<D>& eta) {
      double t = t_of(eta);
      double w = t * v_mag * eta[0];
      double ne = norm<D>(eta);
      return cplx(detail::psi2_profile(w) * (1.0 - chi2(ne)) * t *
                      std::pow(bracket(ne), 1.0 - e),
                  0.0);
    });
    put("m8", std::move(m), "t|v.eta| >= 1 and |eta| >= 1", false);
  }

  return set;
}

}  // namespace hypokin
