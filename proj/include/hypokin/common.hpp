#pragma once

// Shared basics: small fixed-size vectors, error taxonomy, deterministic RNG,
// and a fixed-chunking parallel loop whose results never depend on the worker
// count.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hypokin {

using cplx = std::complex<double>;

constexpr double pi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// errors

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : error {
  using error::error;
};
struct dimension_error : error {
  using error::error;
};
struct representation_error : error {
  using error::error;
};
struct symbol_error : error {
  using error::error;
};
struct parameter_error : error {
  using error::error;
};
struct step_error : error {
  using error::error;
};
struct profile_error : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// small vectors

template <int D>
using Vec = std::array<double, D>;

template <int D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (int d = 0; d < D; ++d) s += a[d] * b[d];
  return s;
}

template <int D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(dot<D>(a, a));
}

/// Japanese bracket <z> = (1+|z|^2)^{1/2}.
template <int D>
inline double bracket(const Vec<D>& z) {
  return std::sqrt(1.0 + dot<D>(z, z));
}

inline double bracket(double z) { return std::sqrt(1.0 + z * z); }

template <int D>
inline Vec<D> axpy(double a, const Vec<D>& x, const Vec<D>& y) {
  Vec<D> r;
  for (int d = 0; d < D; ++d) r[d] = a * x[d] + y[d];
  return r;
}

template <int D>
inline Vec<D> scaled(const Vec<D>& x, double a) {
  Vec<D> r;
  for (int d = 0; d < D; ++d) r[d] = a * x[d];
  return r;
}

// ---------------------------------------------------------------------------
// deterministic RNG (fixed sequences across platforms; std distributions are
// implementation-defined, so sampling is hand-rolled)

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// uniform in [0,1)
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// log-uniform over [lo, hi], lo>0
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// standard normal via Box-Muller
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

  cplx unit_phase() {
    double t = uniform(0.0, 2.0 * pi);
    return cplx(std::cos(t), std::sin(t));
  }

  /// uniform direction on the sphere S^{D-1}
  template <int D>
  Vec<D> direction() {
    Vec<D> u;
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int d = 0; d < D; ++d) {
        u[d] = normal();
        n2 += u[d] * u[d];
      }
    } while (n2 < 1e-12);
    double inv = 1.0 / std::sqrt(n2);
    for (int d = 0; d < D; ++d) u[d] *= inv;
    return u;
  }

  /// independent child stream for index i (seed-split determinism)
  Rng split(std::uint64_t i) const {
    Rng r(state ^ (0x632be59bd9b4e019ull * (i + 1)));
    r.next_u64();
    return r;
  }
};

// ---------------------------------------------------------------------------
// deterministic parallel map

/// Runs fn(i) for i in [0,n). Each index writes only its own outputs, so the
/// result is identical for any worker count; reductions belong to the caller
/// and must run in index order.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t nw = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += nw) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// misc

/// experiment outcome; out-of-hypothesis inputs are first-class results of
/// negative controls, not errors
enum class Verdict { pass, fail, out_of_hypothesis };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "out-of-hypothesis";
  }
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline double sq(double x) { return x * x; }

/// least-squares slope of y against x
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

}  // namespace hypokin
