#pragma once

// Parameter laws of the frequency decompositions: the velocity-frequency
// threshold K(R) matched to the transport exponents, and the two shear-time
// rules t(|eta|) used by the compactness and regularity arguments.

#include "hypokin/common.hpp"

namespace hypokin {

/// K(R) = (1/2) delta^{1/(1+alpha)} R^{(1-beta)/(1+alpha)}
inline double k_of_r(double R, double delta, double alpha, double beta) {
  if (R <= 0.0) throw parameter_error("k_of_r: R must be positive");
  if (delta <= 0.0) throw parameter_error("k_of_r: delta must be positive");
  if (alpha < 0.0) throw parameter_error("k_of_r: alpha must be >= 0");
  if (beta < 0.0 || beta >= 1.0)
    throw parameter_error("k_of_r: beta must lie in [0,1) (the law degenerates at beta=1)");
  return 0.5 * std::pow(delta, 1.0 / (1.0 + alpha)) *
         std::pow(R, (1.0 - beta) / (1.0 + alpha));
}

/// shear time of the compactness argument: t = 2K/|eta| (0 at eta = 0,
/// outside every support used)
inline double t_compactness(double eta_norm, double K) {
  if (eta_norm == 0.0) return 0.0;
  return 2.0 * K / eta_norm;
}

/// shear time of the regularity argument: the unique t >= 0 with
/// <t eta> = 2 <eta>^{sigma/r}, in closed form t|eta| = sqrt(4<eta>^{2s}-1)
inline double t_regularity(double eta_norm, double sigma, double r) {
  if (r <= 0.0) throw parameter_error("t_regularity: r must be positive");
  if (eta_norm == 0.0) return 0.0;
  double b = bracket(eta_norm);
  return std::sqrt(4.0 * std::pow(b, 2.0 * sigma / r) - 1.0) / eta_norm;
}

/// regularity gain sigma = (1-beta) r / (1 + r + alpha)
inline double sigma_formula(double r, double alpha, double beta) {
  if (r < 0.0) throw parameter_error("sigma_formula: r must be >= 0");
  if (alpha < 0.0) throw parameter_error("sigma_formula: alpha must be >= 0");
  if (beta < 0.0 || beta > 1.0)
    throw parameter_error("sigma_formula: beta must lie in [0,1]");
  return (1.0 - beta) * r / (1.0 + r + alpha);
}

}  // namespace hypokin
