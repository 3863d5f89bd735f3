#pragma once

// Frequency-transport machinery: the sheared representation formula verified
// against closed-form fields, the support geometry of the shifted windows,
// the sharp truncation bound, and the four-way phase-space splitting into
// low / velocity-tail / hypoelliptic / elliptic parts.

#include <vector>

#include "hypokin/analytic.hpp"
#include "hypokin/common.hpp"
#include "hypokin/cutoff.hpp"
#include "hypokin/field.hpp"
#include "hypokin/multiplier.hpp"
#include "hypokin/params.hpp"
#include "hypokin/quadrature.hpp"

namespace hypokin {

struct DecompositionParams {
  double R;
  double delta;
  double L;
  double alpha;
  double beta;
  double K;  // derived

  DecompositionParams(double R_, double delta_, double L_, double alpha_, double beta_)
      : R(R_), delta(delta_), L(L_), alpha(alpha_), beta(beta_),
        K(k_of_r(R_, delta_, alpha_, beta_)) {
    if (L <= 1.0) throw parameter_error("decomposition: L must exceed 1");
  }
};

// ---------------------------------------------------------------------------
// representation formula

using TimeRule = std::function<double(double /*|eta|*/)>;

inline TimeRule compactness_time_rule(double K) {
  return [K](double eta_norm) { return t_compactness(eta_norm, K); };
}

inline TimeRule regularity_time_rule(double sigma, double r) {
  return [sigma, r](double eta_norm) { return t_regularity(eta_norm, sigma, r); };
}

/// Max residual of the frequency-space representation identity
///   p(eta,xi) F f(eta,xi) = p(eta,xi) [ F f(eta, xi - t eta)
///       - t \int_0^1 <eta>^beta <xi - s t eta>^alpha F g(eta, xi - s t eta) ds ]
/// over a random frequency sample, where the source transform is taken in
/// closed form from the dual transport equation,
///   F g(eta,zeta) = -<eta>^{-beta} <zeta>^{-alpha} eta . grad_xi F f(eta,zeta),
/// and the s-integral uses Gauss-Legendre of the given order.
template <int D>
double duhamel_residual(const AnalyticField<D>& f, double alpha, double beta,
                        const TimeRule& t_rule, const MultiplierSymbol<D>& p,
                        int quadrature_order, int samples = 64,
                        std::uint64_t seed = 1, double freq_range = 3.0) {
  auto source_transform = [&](const Vec<D>& eta, const Vec<D>& zeta) {
    auto grad = f.fourier_grad_xi(eta, zeta);
    cplx s = 0.0;
    for (int d = 0; d < D; ++d) s += eta[d] * grad[d];
    return -std::pow(bracket<D>(eta), -beta) * std::pow(bracket<D>(zeta), -alpha) * s;
  };

  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vec<D> eta, xi;
    for (int d = 0; d < D; ++d) {
      eta[d] = rng.uniform(-freq_range, freq_range);
      xi[d] = rng.uniform(-freq_range, freq_range);
    }
    const double t = t_rule(norm<D>(eta));
    cplx weight = p.eval(eta, xi);

    cplx lhs = weight * f.fourier_eval(eta, xi);
    cplx sheared = f.sheared_fourier_eval(eta, xi, t);
    cplx integral = gl_integrate(
        [&](double s) {
          Vec<D> z = axpy<D>(-s * t, eta, xi);
          return std::pow(bracket<D>(eta), beta) * std::pow(bracket<D>(z), alpha) *
                 source_transform(eta, z);
        },
        0.0, 1.0, quadrature_order);
    cplx rhs = weight * (sheared - t * integral);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// support geometry

struct SupportCheckReport {
  std::size_t samples = 0;
  std::size_t in_window = 0;   // points landing in the shifted window
  std::size_t violations = 0;  // window points outside K <= |xi| <= 3K
};

/// Checks on random frequencies that every (eta, xi) with |eta| > R and
/// |xi + t(|eta|) eta| <= K satisfies K <= |xi| <= 3K, with t = 2K/|eta|.
/// Half the sample is drawn inside the window so the inclusion is exercised,
/// the other half is unconstrained.
template <int D>
SupportCheckReport support_transport_check(double R, double K, std::size_t samples,
                                           std::uint64_t seed = 1) {
  Rng rng(seed);
  SupportCheckReport rep;
  rep.samples = samples;
  const double tol = 1e-9;  // rounding slack on the boundary circles
  for (std::size_t i = 0; i < samples; ++i) {
    Vec<D> eta, xi;
    if (i % 2 == 0) {
      // constructed inside the window: xi = -t eta + u, |u| <= K
      double ne = R * rng.log_uniform(1.0 + 1e-12, 100.0);
      Vec<D> u = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                          : rng.template direction<D>();
      eta = scaled<D>(u, ne);
      double t = t_compactness(ne, K);
      Vec<D> w = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                          : rng.template direction<D>();
      xi = axpy<D>(-t, eta, scaled<D>(w, K * rng.uniform()));
    } else {
      for (int d = 0; d < D; ++d) {
        eta[d] = rng.uniform(-4.0 * R, 4.0 * R);
        xi[d] = rng.uniform(-4.0 * K, 4.0 * K);
      }
    }
    double ne = norm<D>(eta);
    if (ne <= R) continue;
    double t = t_compactness(ne, K);
    if (norm<D>(axpy<D>(t, eta, xi)) > K * (1.0 + tol)) continue;
    ++rep.in_window;
    double nx = norm<D>(xi);
    if (nx < K * (1.0 - tol) || nx > 3.0 * K * (1.0 + tol)) ++rep.violations;
  }
  return rep;
}

/// Boundary probe of the same inclusion: points with |xi + t eta| = K exactly.
template <int D>
bool support_boundary_probe(double R, double K, std::size_t samples,
                            std::uint64_t seed = 2) {
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    double ne = R * rng.log_uniform(1.0 + 1e-12, 30.0);
    Vec<D> u = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                        : rng.template direction<D>();
    Vec<D> eta = scaled<D>(u, ne);
    double t = t_compactness(ne, K);
    Vec<D> w = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                        : rng.template direction<D>();
    Vec<D> xi = axpy<D>(-t, eta, scaled<D>(w, K));  // |xi + t eta| = K
    double nx = norm<D>(xi);
    if (nx < K * (1.0 - 1e-9) || nx > 3.0 * K * (1.0 + 1e-9)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// sharp truncation bound

struct TruncationSweepResult {
  double sup = 0.0;    // largest sampled value of the combined symbol
  double bound = 0.0;  // 2^{beta/2 - alpha} 10^{alpha/2} delta
  double ratio() const { return sup / bound; }
};

/// Samples the sharp combined source symbol of the L^2 truncation estimate,
///   1_{|eta| > R, |xi + s t eta| <= K} t <eta>^beta <xi>^alpha,  t = 2K/|eta|,
/// over the window it lives on, and compares against its closed bound.
template <int D>
TruncationSweepResult truncation_symbol_sweep(double R, double delta, double alpha,
                                              double beta, std::size_t samples,
                                              std::uint64_t seed = 1) {
  const double K = k_of_r(R, delta, alpha, beta);
  if (K <= 1.0)
    throw parameter_error("truncation sweep: K(R) <= 1; enlarge R or delta");
  Rng rng(seed);
  TruncationSweepResult res;
  res.bound = std::pow(2.0, beta / 2.0 - alpha) * std::pow(10.0, alpha / 2.0) * delta;
  const double s_values[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t i = 0; i < samples; ++i) {
    double s = s_values[i % 5];
    double ne = R * rng.log_uniform(1.0 + 1e-12, 1e3);
    Vec<D> u = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                        : rng.template direction<D>();
    Vec<D> eta = scaled<D>(u, ne);
    double t = t_compactness(ne, K);
    Vec<D> w = (D == 1) ? Vec<D>{rng.uniform() < 0.5 ? -1.0 : 1.0}
                        : rng.template direction<D>();
    Vec<D> xi = axpy<D>(-s * t, eta, scaled<D>(w, K * rng.uniform()));
    if (norm<D>(axpy<D>(s * t, eta, xi)) > K) continue;  // outside the window
    double val = t * std::pow(bracket<D>(eta), beta) * std::pow(bracket<D>(xi), alpha);
    res.sup = std::max(res.sup, val);
  }
  return res;
}

// ---------------------------------------------------------------------------
// four-way splitting

template <int D>
struct SplitFields {
  PhaseField<D> low_part;
  PhaseField<D> v_tail_part;
  PhaseField<D> hypoelliptic_part;
  PhaseField<D> elliptic_part;
};

/// Partition of unity in frequency space:
///   1 = chi(|eta|/R) chi(|xi|/K)              (low)
///     + (1 - chi)(|xi|/K)                     (velocity tail)
///     + (1-chi)(|eta|/R) chi(|xi|/K) chi((K/L) v.eta/|eta|)        (hypoelliptic)
///     + (1-chi)(|eta|/R) chi(|xi|/K) (1-chi)((K/L) v.eta/|eta|)    (elliptic)
/// The velocity-dependent factor acts per v-slice as an eta-multiplier.
template <int D>
SplitFields<D> split_highfreq(const PhaseField<D>& f, const DecompositionParams& pr,
                              int workers = 1) {
  const double R = pr.R, K = pr.K, L = pr.L;
  PhaseField<D> low = apply_joint_symbol(
      f,
      [R, K](const Vec<D>& eta, const Vec<D>& xi) {
        return cplx(cutoff_chi(norm<D>(eta) / R) * cutoff_chi(norm<D>(xi) / K), 0.0);
      },
      workers);
  PhaseField<D> vtail = apply_joint_symbol(
      f,
      [K](const Vec<D>&, const Vec<D>& xi) {
        return cplx(1.0 - cutoff_chi(norm<D>(xi) / K), 0.0);
      },
      workers);
  PhaseField<D> mid = apply_joint_symbol(
      f,
      [R, K](const Vec<D>& eta, const Vec<D>& xi) {
        return cplx((1.0 - cutoff_chi(norm<D>(eta) / R)) * cutoff_chi(norm<D>(xi) / K),
                    0.0);
      },
      workers);
  auto angle = [K, L](const Vec<D>& v, const Vec<D>& eta) {
    double ne = norm<D>(eta);
    return ne == 0.0 ? 0.0 : (K / L) * dot<D>(v, eta) / ne;
  };
  PhaseField<D> hypo = apply_x_symbol_per_v(
      mid, [&angle](const Vec<D>& v, const Vec<D>& eta) {
        return cplx(cutoff_chi(angle(v, eta)), 0.0);
      },
      workers);
  PhaseField<D> ell = apply_x_symbol_per_v(
      mid, [&angle](const Vec<D>& v, const Vec<D>& eta) {
        return cplx(1.0 - cutoff_chi(angle(v, eta)), 0.0);
      },
      workers);
  return SplitFields<D>{std::move(low), std::move(vtail), std::move(hypo),
                        std::move(ell)};
}

/// relative deviation of the four parts from the original field
template <int D>
double split_partition_residual(const PhaseField<D>& f, const SplitFields<D>& s) {
  PhaseField<D> sum = s.low_part;
  sum += s.v_tail_part;
  sum += s.hypoelliptic_part;
  sum += s.elliptic_part;
  sum -= f;
  return lebesgue_norm(sum, 2.0) / lebesgue_norm(f, 2.0);
}

/// split diagnostics: (part, L^p mass) per part
template <int D>
CsvTable split_to_table(const SplitFields<D>& s, double p,
                        const std::string& name = "split") {
  CsvTable t;
  t.name = name;
  t.header = {"part", "lp_mass"};
  t.add_row({std::string("low"), lebesgue_norm(to_representation(s.low_part, false, false), p)});
  t.add_row({std::string("v_tail"),
             lebesgue_norm(to_representation(s.v_tail_part, false, false), p)});
  t.add_row({std::string("hypoelliptic"),
             lebesgue_norm(to_representation(s.hypoelliptic_part, false, false), p)});
  t.add_row({std::string("elliptic"),
             lebesgue_norm(to_representation(s.elliptic_part, false, false), p)});
  return t;
}

}  // namespace hypokin
