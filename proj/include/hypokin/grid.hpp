#pragma once

// Discretized periodic phase space (x,v) in dimension D with dual frequency
// lattices. Node lattices are centered: x_j = -P/2 + j*dx, and frequencies
// are eta_k = 2*pi*k/P for integer k in [-n/2, n/2).

#include <memory>
#include <vector>

#include "hypokin/common.hpp"
#include "hypokin/fft.hpp"

namespace hypokin {

template <int D>
class PhaseGrid {
  static_assert(D >= 1 && D <= 3, "phase space dimension must be 1, 2 or 3");

 public:
  PhaseGrid(double x_period, double v_period, std::size_t n_x, std::size_t n_v)
      : x_period_(x_period), v_period_(v_period), n_x_(n_x), n_v_(n_v) {
    if (x_period <= 0.0 || v_period <= 0.0)
      throw config_error("grid periods must be positive");
    if (!is_pow2(n_x) || n_x < 8)
      throw config_error("n_x must be a power of two >= 8");
    if (!is_pow2(n_v) || n_v < 8)
      throw config_error("n_v must be a power of two >= 8");
    plan_x_ = std::make_shared<FftPlan>(n_x);
    plan_v_ = std::make_shared<FftPlan>(n_v);
  }

  double x_period() const { return x_period_; }
  double v_period() const { return v_period_; }
  std::size_t n_x() const { return n_x_; }
  std::size_t n_v() const { return n_v_; }
  double x_step() const { return x_period_ / double(n_x_); }
  double v_step() const { return v_period_ / double(n_v_); }

  /// samples per x-block and v-block, and total tensor size
  std::size_t x_size() const { return ipow(n_x_, D); }
  std::size_t v_size() const { return ipow(n_v_, D); }
  std::size_t size() const { return x_size() * v_size(); }

  /// cell volume of the (x,v) lattice
  double cell_volume() const {
    return std::pow(x_step(), D) * std::pow(v_step(), D);
  }

  double x_node(std::size_t j) const { return -0.5 * x_period_ + double(j) * x_step(); }
  double v_node(std::size_t j) const { return -0.5 * v_period_ + double(j) * v_step(); }

  /// signed integer mode for storage index k on an n-point axis
  static long signed_mode(std::size_t k, std::size_t n) {
    return k < n / 2 ? long(k) : long(k) - long(n);
  }

  double eta_value(std::size_t k) const {
    return 2.0 * pi * double(signed_mode(k, n_x_)) / x_period_;
  }
  double xi_value(std::size_t k) const {
    return 2.0 * pi * double(signed_mode(k, n_v_)) / v_period_;
  }

  /// multi-index decode for the x-block (row-major) and v-block
  Vec<D> x_point(std::size_t xi_lin) const {
    return decode(xi_lin, n_x_, [this](std::size_t j) { return x_node(j); });
  }
  Vec<D> v_point(std::size_t vi_lin) const {
    return decode(vi_lin, n_v_, [this](std::size_t j) { return v_node(j); });
  }
  Vec<D> eta_point(std::size_t xi_lin) const {
    return decode(xi_lin, n_x_, [this](std::size_t k) { return eta_value(k); });
  }
  Vec<D> xi_point(std::size_t vi_lin) const {
    return decode(vi_lin, n_v_, [this](std::size_t k) { return xi_value(k); });
  }

  const FftPlan& plan_x() const { return *plan_x_; }
  const FftPlan& plan_v() const { return *plan_v_; }

  bool operator==(const PhaseGrid& o) const {
    return x_period_ == o.x_period_ && v_period_ == o.v_period_ &&
           n_x_ == o.n_x_ && n_v_ == o.n_v_;
  }

  static std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

 private:
  template <class F>
  Vec<D> decode(std::size_t lin, std::size_t n, const F& valof) const {
    Vec<D> p;
    for (int d = D - 1; d >= 0; --d) {
      p[d] = valof(lin % n);
      lin /= n;
    }
    return p;
  }

  double x_period_, v_period_;
  std::size_t n_x_, n_v_;
  std::shared_ptr<FftPlan> plan_x_, plan_v_;
};

/// make_grid(D, ...) with the dimension as template parameter.
template <int D>
std::shared_ptr<const PhaseGrid<D>> make_grid(double x_period, double v_period,
                                              std::size_t n_x, std::size_t n_v) {
  return std::make_shared<const PhaseGrid<D>>(x_period, v_period, n_x, n_v);
}

}  // namespace hypokin
