#pragma once

// Canonical one-dimensional test families for the compactness experiments:
// positives (smooth, velocity-compact) and negative controls (oscillation and
// concentration). Every member carries a source matched by make_source, so
// the transport relation holds exactly on the grid.

#include "hypokin/compactness.hpp"
#include "hypokin/regularity.hpp"

namespace hypokin {

using GridPtr1 = std::shared_ptr<const PhaseGrid<1>>;

/// lambda-independent smooth field; the trivial positive control
inline FamilySpec<1> fixed_smooth_family(GridPtr1 grid, int members,
                                         double alpha = 0.0, double beta = 0.0) {
  FamilySpec<1> fam;
  fam.description = "fixed smooth field";
  for (int i = 0; i < members; ++i) fam.lambda_values.push_back(double(i));
  fam.generator = [grid, alpha, beta](double) {
    PhaseField<1> f = PhaseField<1>::sample(grid, [](const Vec<1>& x, const Vec<1>& v) {
      return cplx(std::cos(x[0]) * std::exp(-0.5 * v[0] * v[0]), 0.0);
    });
    return make_transport_problem(std::move(f), alpha, beta);
  };
  return fam;
}

/// x-waves at frequency lambda with amplitude <lambda>^{beta-1} and a fixed
/// smooth velocity profile: velocity-compact, with uniformly bounded sources.
/// The canonical family exercising the compactness transfer.
inline FamilySpec<1> damped_xwave_family(GridPtr1 grid, double alpha, double beta,
                                         std::vector<double> modes,
                                         double v_width = 1.2) {
  FamilySpec<1> fam;
  fam.description = "damped x-waves with smooth velocity profile";
  fam.lambda_values = std::move(modes);
  fam.generator = [grid, alpha, beta, v_width](double lambda) {
    double amp = std::pow(bracket(lambda), beta - 1.0);
    PhaseField<1> f =
        PhaseField<1>::sample(grid, [lambda, amp, v_width](const Vec<1>& x, const Vec<1>& v) {
          return cplx(amp * std::cos(lambda * x[0]) *
                          std::exp(-0.5 * sq(v[0] / v_width)),
                      0.0);
        });
    return make_transport_problem(std::move(f), alpha, beta);
  };
  return fam;
}

/// band-limited random fields with velocity-Sobolev decay; generic positives
inline FamilySpec<1> random_smooth_family(GridPtr1 grid, std::uint64_t seed,
                                          int members, double r_v = 2.0,
                                          double alpha = 0.0, double beta = 0.0) {
  FamilySpec<1> fam;
  fam.description = "random velocity-smooth fields";
  fam.seed = seed;
  for (int i = 0; i < members; ++i) fam.lambda_values.push_back(double(i));
  fam.generator = [grid, seed, r_v, alpha, beta](double lambda) {
    PhaseField<1> f = random_sobolev_field<1>(grid, r_v, Axis::v, 0.51,
                                              seed + std::uint64_t(lambda));
    // tame the x-spectrum as well so the family is genuinely compact
    f = bessel_potential(f, -1.2, 0.0);
    double n = lebesgue_norm(to_representation(f, false, false), 2.0);
    f *= cplx(1.0 / n, 0.0);
    return make_transport_problem(std::move(f), alpha, beta);
  };
  return fam;
}

/// constant-amplitude x-oscillations cos(lambda x) rho(v): compact in v,
/// not compact in x; joint moduli stall. Negative control.
inline FamilySpec<1> x_oscillation_family(GridPtr1 grid, std::vector<double> modes,
                                          double v_width = 1.2) {
  FamilySpec<1> fam;
  fam.description = "unit-amplitude x-oscillations";
  fam.lambda_values = std::move(modes);
  fam.generator = [grid, v_width](double lambda) {
    PhaseField<1> f =
        PhaseField<1>::sample(grid, [lambda, v_width](const Vec<1>& x, const Vec<1>& v) {
          return cplx(std::cos(lambda * x[0]) * std::exp(-0.5 * sq(v[0] / v_width)),
                      0.0);
        });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

/// constant-amplitude v-oscillations: not compact in v. Negative control and
/// out-of-hypothesis probe for the transfer experiment.
inline FamilySpec<1> v_oscillation_family(GridPtr1 grid, std::vector<double> modes,
                                          double x_width = 1.0) {
  FamilySpec<1> fam;
  fam.description = "unit-amplitude v-oscillations";
  fam.lambda_values = std::move(modes);
  fam.generator = [grid, x_width](double lambda) {
    PhaseField<1> f =
        PhaseField<1>::sample(grid, [lambda, x_width](const Vec<1>& x, const Vec<1>& v) {
          return cplx(std::cos(lambda * v[0]) * std::exp(-0.5 * sq(x[0] / x_width)),
                      0.0);
        });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

/// x-concentrating bumps with a smooth velocity profile: the transport dual
/// norm blows up as eps shrinks (no velocity smoothing can absorb the
/// x-derivative), and the equiintegrability modulus stalls.
inline FamilySpec<1> x_concentration_family(GridPtr1 grid, double p,
                                            std::vector<double> eps_list,
                                            double v_width = 1.2) {
  FamilySpec<1> fam;
  fam.description = "x-concentrating bumps, smooth in v";
  fam.lambda_values = std::move(eps_list);
  fam.generator = [grid, p, v_width](double eps) {
    double amp = std::pow(1.0 / eps, 1.0 / p);
    PhaseField<1> f =
        PhaseField<1>::sample(grid, [eps, amp, v_width](const Vec<1>& x, const Vec<1>& v) {
          return cplx(amp * cutoff_chi(x[0] / eps) * std::exp(-0.5 * sq(v[0] / v_width)),
                      0.0);
        });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

/// L^p-normalized shrinking bumps (1/eps)^{2/p} chi(x/eps) chi(v/eps):
/// mass concentrates at the origin; all moduli stall. Negative control.
inline FamilySpec<1> concentration_family(GridPtr1 grid, double p,
                                          std::vector<double> eps_list) {
  FamilySpec<1> fam;
  fam.description = "concentrating bumps";
  fam.lambda_values = std::move(eps_list);
  fam.generator = [grid, p](double eps) {
    double amp = std::pow(1.0 / eps, 2.0 / p);
    PhaseField<1> f = PhaseField<1>::sample(grid, [eps, amp](const Vec<1>& x, const Vec<1>& v) {
      return cplx(amp * cutoff_chi(x[0] / eps) * cutoff_chi(v[0] / eps), 0.0);
    });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

/// Gaussian-profile concentration: same stalling translation moduli, with
/// spectral tails wide enough to persist across moderate cutoff radii
inline FamilySpec<1> gaussian_concentration_family(GridPtr1 grid, double p,
                                                   std::vector<double> eps_list) {
  FamilySpec<1> fam;
  fam.description = "concentrating gaussians";
  fam.lambda_values = std::move(eps_list);
  fam.generator = [grid, p](double eps) {
    double amp = std::pow(1.0 / eps, 2.0 / p);
    PhaseField<1> f = PhaseField<1>::sample(grid, [eps, amp](const Vec<1>& x, const Vec<1>& v) {
      return cplx(amp * std::exp(-0.5 * (sq(x[0]) + sq(v[0])) / sq(eps)), 0.0);
    });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

/// joint oscillation cos(kx x) cos(kv v) under a smooth envelope: not compact
/// in either variable
inline FamilySpec<1> checkerboard_family(GridPtr1 grid, std::vector<double> modes) {
  FamilySpec<1> fam;
  fam.description = "joint checkerboard oscillations";
  fam.lambda_values = std::move(modes);
  fam.generator = [grid](double k) {
    PhaseField<1> f = PhaseField<1>::sample(grid, [k](const Vec<1>& x, const Vec<1>& v) {
      return cplx(std::cos(k * x[0]) * std::cos((k + 2.0) * v[0]) *
                      std::exp(-0.25 * (sq(x[0]) + sq(v[0]))),
                  0.0);
    });
    return make_transport_problem(std::move(f), 0.0, 0.0);
  };
  return fam;
}

}  // namespace hypokin
