#pragma once

// Quadrature rules used by the analytic-field oracles and the counterexample
// constructions: Gauss-Legendre on [-1,1], Gauss-Hermite for exp(-t^2)
// weights, and adaptive Simpson for generic 1D integrands.

#include <functional>
#include <map>
#include <vector>

#include "hypokin/common.hpp"

namespace hypokin {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
inline const QuadRule& gauss_legendre(int order) {
  static std::map<int, QuadRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  QuadRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[order - 1 - i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[order - 1 - i] = r.weights[i];
  }
  return cache.emplace(order, std::move(r)).first->second;
}

/// integral of f over [a,b] with Gauss-Legendre of the given order
template <class F>
auto gl_integrate(const F& f, double a, double b, int order)
    -> decltype(f(0.0)) {
  const QuadRule& q = gauss_legendre(order);
  decltype(f(0.0)) s{};
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < order; ++i) s += q.weights[i] * f(c + h * q.nodes[i]);
  return s * h;
}

/// Gauss-Hermite nodes/weights for \int e^{-t^2} f(t) dt.
inline const QuadRule& gauss_hermite(int order) {
  static std::map<int, QuadRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  QuadRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double sqrt_pi = std::sqrt(pi);
  double x = 0.0;
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // asymptotic initial guesses (Numerical Recipes style)
    if (i == 0)
      x = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -0.16667);
    else if (i == 1)
      x -= 1.14 * std::pow(double(order), 0.426) / x;
    else if (i == 2)
      x = 1.86 * x - 0.86 * r.nodes[order - 1];
    else if (i == 3)
      x = 1.91 * x - 0.91 * r.nodes[order - 2];
    else
      x = 2.0 * x - r.nodes[order - i + 1];
    double pp = 0.0;
    for (int it2 = 0; it2 < 200; ++it2) {
      double p0 = std::pow(pi, -0.25), p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = x * std::sqrt(2.0 / (j + 1.0)) * p1 -
             std::sqrt(double(j) / (j + 1.0)) * p2;
      }
      pp = std::sqrt(2.0 * order) * p1;
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-14) break;
    }
    r.nodes[order - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[order - 1 - i] = 2.0 / (pp * pp);
    r.weights[i] = r.weights[order - 1 - i];
  }
  (void)sqrt_pi;
  return cache.emplace(order, std::move(r)).first->second;
}

/// Adaptive Simpson on [a,b] to absolute tolerance tol. Subdivision is
/// forced down to min_depth so period-commensurate sampling cannot fake
/// convergence on oscillatory integrands.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 30, int min_depth = 6) {
  struct Impl {
    const F& f;
    int max_depth, min_depth;
    double run(double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
      double m = 0.5 * (a + b);
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      bool converged = std::abs(left + right - whole) <= 15.0 * tol;
      if (depth >= max_depth || (depth >= min_depth && converged))
        return left + right + (left + right - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f, max_depth, min_depth}.run(a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace hypokin
