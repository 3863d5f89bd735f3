#pragma once

// Fourier multiplier engine: symbol objects, lattice application, the
// Marcinkiewicz-Mikhlin and Hormander-Mikhlin criteria evaluated numerically,
// and randomized lower-bound estimation of M^p operator norms.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hypokin/common.hpp"
#include "hypokin/csv.hpp"
#include "hypokin/cutoff.hpp"
#include "hypokin/field.hpp"
#include "hypokin/quadrature.hpp"

namespace hypokin {

/// A symbol rho(eta, xi). Symbols of eta only ignore xi. An analytic partial
/// derivative evaluator may be attached (axis < D differentiates in eta_axis,
/// axis >= D in xi_{axis-D}); criteria fall back to central differences.
template <int D>
struct MultiplierSymbol {
  std::function<cplx(const Vec<D>&, const Vec<D>&)> eval;
  std::function<cplx(const Vec<D>&, const Vec<D>&, int)> deriv;
  std::map<std::string, double> params;
  std::string support_hint;
  bool joint = false;  // true when the symbol genuinely depends on xi

  cplx operator()(const Vec<D>& eta, const Vec<D>& xi) const { return eval(eta, xi); }
};

template <int D>
MultiplierSymbol<D> eta_symbol(std::function<cplx(const Vec<D>&)> fn) {
  MultiplierSymbol<D> m;
  m.eval = [fn = std::move(fn)](const Vec<D>& eta, const Vec<D>&) { return fn(eta); };
  return m;
}

template <int D>
MultiplierSymbol<D> xi_symbol(std::function<cplx(const Vec<D>&)> fn) {
  MultiplierSymbol<D> m;
  m.joint = true;
  m.eval = [fn = std::move(fn)](const Vec<D>&, const Vec<D>& xi) { return fn(xi); };
  return m;
}

/// spectral pointwise multiplication then inverse transform
template <int D>
PhaseField<D> apply(const MultiplierSymbol<D>& m, const PhaseField<D>& f,
                    int workers = 1) {
  return apply_joint_symbol(
      f, [&m](const Vec<D>& eta, const Vec<D>& xi) { return m.eval(eta, xi); },
      workers);
}

// ---------------------------------------------------------------------------
// derivative-based criteria

struct SampleSpec {
  int radii = 48;           // log-spaced |eta| scales
  int directions = 16;      // directions per scale (2 in 1D)
  double r_min = 1e-3;
  double r_max = 1e6;
  std::uint64_t seed = 1;
  double fd_rel_step = 1e-4;  // h = fd_rel_step * |eta| per axis
};

struct CriterionContribution {
  std::string multi_index;
  double value = 0.0;
  std::vector<double> arg_max;
};

struct CriterionReport {
  std::string kind;  // "mm", "mm-joint", or "hm"
  double bound = 0.0;
  bool finite = true;
  std::vector<double> offending_point;
  std::vector<CriterionContribution> table;
  int radii = 0, directions = 0;

  CsvTable to_table(const std::string& name = "criterion") const {
    CsvTable t;
    t.name = name;
    t.header = {"multi_index", "contribution", "arg_max"};
    for (const auto& c : table) {
      std::string at;
      for (double z : c.arg_max) at += (at.empty() ? "" : " ") + csv_format(CsvCell{z});
      t.add_row({c.multi_index, c.value, at});
    }
    return t;
  }
};

namespace detail {

/// central finite difference for a multi-index with entries in {0,1,2};
/// analytic first derivatives are used where provided
template <int D>
cplx partial(const MultiplierSymbol<D>& m, std::vector<double> z,
             std::vector<int> alpha, const std::vector<double>& h) {
  const int n = int(z.size());
  int axis = -1;
  for (int a = 0; a < n; ++a)
    if (alpha[a] > 0) {
      axis = a;
      break;
    }
  auto eval_at = [&](const std::vector<double>& pt) {
    Vec<D> eta{}, xi{};
    for (int d = 0; d < D; ++d) eta[d] = pt[d];
    for (int d = 0; d < n - D; ++d) xi[d] = pt[D + d];
    return m.eval(eta, xi);
  };
  if (axis < 0) return eval_at(z);

  std::vector<int> rest = alpha;
  // analytic first derivative, only when it is the innermost one left
  bool only_this = (alpha[axis] == 1);
  for (int a = 0; a < n; ++a)
    if (a != axis && alpha[a] != 0) only_this = false;
  if (only_this && m.deriv) {
    Vec<D> eta{}, xi{};
    for (int d = 0; d < D; ++d) eta[d] = z[d];
    for (int d = 0; d < n - D; ++d) xi[d] = z[D + d];
    return m.deriv(eta, xi, axis);
  }

  if (alpha[axis] == 1) {
    rest[axis] = 0;
    std::vector<double> zp = z, zm = z;
    zp[axis] += h[axis];
    zm[axis] -= h[axis];
    return (partial(m, zp, rest, h) - partial(m, zm, rest, h)) / (2.0 * h[axis]);
  }
  rest[axis] -= 2;
  std::vector<double> zp = z, zm = z;
  zp[axis] += h[axis];
  zm[axis] -= h[axis];
  return (partial(m, zp, rest, h) - 2.0 * partial(m, z, rest, h) +
          partial(m, zm, rest, h)) /
         (h[axis] * h[axis]);
}

inline std::string multi_index_name(const std::vector<int>& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(alpha[i]);
  }
  return s + ")";
}

/// deterministic directions: axis directions plus seeded random ones
template <int N>
std::vector<Vec<N>> sample_directions(int count, std::uint64_t seed) {
  std::vector<Vec<N>> dirs;
  if constexpr (N == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  } else {
    Rng rng(seed);
    for (int d = 0; d < N; ++d) {
      Vec<N> e{};
      e[d] = 1.0;
      dirs.push_back(e);
    }
    while (int(dirs.size()) < count) dirs.push_back(rng.template direction<N>());
    return dirs;
  }
}

}  // namespace detail

/// Marcinkiewicz-Mikhlin bound
///   A = sum_{alpha in {0,1}^n} sup |z^alpha d^alpha m(z)|
/// for symbols of eta only (n = D) or jointly of (eta,xi) (n = 2D).
/// Sampling is log-uniform in scale and uniform in direction.
template <int D>
CriterionReport mm_criterion(const MultiplierSymbol<D>& m, const SampleSpec& spec) {
  const int n = m.joint ? 2 * D : D;
  CriterionReport rep;
  rep.kind = m.joint ? "mm-joint" : "mm";
  rep.radii = spec.radii;
  rep.directions = spec.directions;

  std::vector<std::vector<int>> alphas;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> a(n, 0);
    for (int b = 0; b < n; ++b) a[b] = (mask >> b) & 1;
    alphas.push_back(a);
  }

  // sample points: product of scales and directions in the n-dim space
  std::vector<std::vector<double>> points;
  Rng rng(spec.seed);
  for (int i = 0; i < spec.radii; ++i) {
    double r = std::exp(std::log(spec.r_min) +
                        (std::log(spec.r_max) - std::log(spec.r_min)) *
                            (double(i) + 0.5) / double(spec.radii));
    int ndir = (n == 1) ? 2 : spec.directions;
    for (int j = 0; j < ndir; ++j) {
      std::vector<double> z(n);
      if (n == 1) {
        z[0] = (j == 0) ? r : -r;
      } else {
        double s = 0.0;
        for (int d = 0; d < n; ++d) {
          z[d] = rng.normal();
          s += z[d] * z[d];
        }
        s = std::sqrt(std::max(s, 1e-300));
        for (int d = 0; d < n; ++d) z[d] *= r / s;
      }
      points.push_back(std::move(z));
    }
  }

  double total = 0.0;
  for (const auto& alpha : alphas) {
    CriterionContribution c;
    c.multi_index = detail::multi_index_name(alpha);
    for (const auto& z : points) {
      double r = 0.0;
      for (double zi : z) r += zi * zi;
      r = std::sqrt(r);
      std::vector<double> h(n, spec.fd_rel_step * r);
      cplx dm = detail::partial<D>(m, z, alpha, h);
      double w = 1.0;
      for (int a = 0; a < n; ++a)
        if (alpha[a]) w *= std::abs(z[a]);
      double val = w * std::abs(dm);
      if (!std::isfinite(val)) {
        rep.finite = false;
        rep.offending_point = z;
        rep.bound = std::numeric_limits<double>::infinity();
        return rep;
      }
      if (val > c.value) {
        c.value = val;
        c.arg_max = z;
      }
    }
    total += c.value;
    rep.table.push_back(std::move(c));
  }
  rep.bound = total;
  return rep;
}

/// Hormander-Mikhlin bound
///   A = sum_{|alpha| <= D/2+1} sup_R R^{-D} int_{R<|eta|<2R} | |eta|^{|alpha|}
///       d^alpha m |^2 d eta
/// for symbols of eta only, with dyadic shells sampled log-uniformly.
template <int D>
CriterionReport hm_criterion(const MultiplierSymbol<D>& m, const SampleSpec& spec) {
  CriterionReport rep;
  rep.kind = "hm";
  rep.radii = spec.radii;
  rep.directions = spec.directions;

  const int max_order = D / 2 + 1;
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur(D, 0);
  std::function<void(int, int)> gen = [&](int axis, int left) {
    if (axis == D) {
      alphas.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[axis] = k;
      gen(axis + 1, left - k);
    }
    cur[axis] = 0;
  };
  gen(0, max_order);

  auto dirs = detail::sample_directions<D>(spec.directions, spec.seed);

  const int radial_order = 16;
  const QuadRule& q = gauss_legendre(radial_order);
  // surface measure of S^{D-1}: 2, 2 pi, 4 pi
  const double sphere = (D == 1) ? 2.0 : (D == 2 ? 2.0 * pi : 4.0 * pi);

  double total = 0.0;
  for (const auto& alpha : alphas) {
    int ord = 0;
    for (int a : alpha) ord += a;
    CriterionContribution c;
    c.multi_index = detail::multi_index_name(alpha);
    for (int i = 0; i < spec.radii; ++i) {
      double R = std::exp(std::log(spec.r_min) +
                          (std::log(spec.r_max) - std::log(spec.r_min)) *
                              (double(i) + 0.5) / double(spec.radii));
      // shell integral in polar form: int_R^{2R} r^{D-1} dr x directions
      double shell = 0.0;
      for (int qi = 0; qi < radial_order; ++qi) {
        double r = 1.5 * R + 0.5 * R * q.nodes[qi];
        double wr = 0.5 * R * q.weights[qi] * std::pow(r, D - 1);
        double avg = 0.0;
        for (const auto& u : dirs) {
          std::vector<double> z(D);
          for (int d = 0; d < D; ++d) z[d] = r * u[d];
          std::vector<double> h(D, spec.fd_rel_step * r);
          cplx dm = detail::partial<D>(m, z, alpha, h);
          double val = std::pow(r, ord) * std::abs(dm);
          if (!std::isfinite(val)) {
            rep.finite = false;
            rep.offending_point = z;
            rep.bound = std::numeric_limits<double>::infinity();
            return rep;
          }
          avg += val * val;
        }
        shell += wr * (avg / double(dirs.size())) * sphere;
      }
      double contribution = shell / std::pow(R, D);
      if (contribution > c.value) {
        c.value = contribution;
        c.arg_max = {R};
      }
    }
    total += c.value;
    rep.table.push_back(std::move(c));
  }
  rep.bound = total;
  return rep;
}

// ---------------------------------------------------------------------------
// randomized M^p lower bounds

struct MpLatticeSpec {
  double x_period = 2.0 * pi;
  double v_period = 2.0 * pi;
  std::size_t n_x = 256;
  std::size_t n_v = 8;
  double band_fraction = 0.5;  // random fields band-limited to this fraction
};

/// Max over probe fields of ||apply(m,f)||_p / ||f||_p: a certified lower
/// bound of the lattice M^p norm, monotone in trials. Probes combine seeded
/// random band-limited fields with coherent wave packets centered where the
/// symbol modulus peaks (which realize sup|m|, itself a lower bound of every
/// M^p norm). Symbols of eta only get fields constant in v, which is exact
/// for such symbols.
template <int D>
double mp_lower_bound(const MultiplierSymbol<D>& m, double p, int trials,
                      std::uint64_t seed, const MpLatticeSpec& lat = {},
                      int workers = 1) {
  if (!(p > 1.0) || std::isinf(p))
    throw parameter_error("mp_lower_bound requires 1 < p < infinity");
  auto grid = make_grid<D>(lat.x_period, lat.v_period, lat.n_x, lat.n_v);
  const double band_x = pi * double(lat.n_x) / lat.x_period * lat.band_fraction;
  const double band_v = pi * double(lat.n_v) / lat.v_period * lat.band_fraction;

  double best = 0.0;
  auto probe = [&](const PhaseField<D>& f) {
    double nf = lebesgue_norm(f, p);
    if (nf == 0.0) return;
    PhaseField<D> g = to_representation(apply(m, f, workers), false, false, workers);
    best = std::max(best, lebesgue_norm(g, p) / nf);
  };

  // modulus argmax sites over the band (the band keeps the packet tails
  // representable); the leading site also calibrates the scale of the
  // random probes below
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> top;
  for (std::size_t xi = 0; xi < grid->x_size(); ++xi) {
    Vec<D> eta = grid->eta_point(xi);
    if (norm<D>(eta) > band_x) continue;
    if (m.joint) {
      for (std::size_t vi = 0; vi < grid->v_size(); ++vi) {
        if (norm<D>(grid->xi_point(vi)) > band_v) continue;
        top.push_back({std::abs(m.eval(eta, grid->xi_point(vi))), {xi, vi}});
      }
    } else {
      top.push_back({std::abs(m.eval(eta, Vec<D>{})), {xi, 0}});
    }
  }
  std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  // random probes over a band ladder anchored at the symbol's own scale, so
  // the band-to-feature ratio is dilation-covariant
  double scale_x = 4.0 * 2.0 * pi / lat.x_period, scale_v = 4.0 * 2.0 * pi / lat.v_period;
  if (!top.empty() && top.front().first > 0.0) {
    scale_x = std::max(scale_x, norm<D>(grid->eta_point(top.front().second.first)));
    scale_v = std::max(scale_v, norm<D>(grid->xi_point(top.front().second.second)));
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).split(t);
    double c = std::pow(2.0, double(1 + t % 3));  // 2, 4, 8 times the scale
    double bx = std::min(band_x, c * scale_x);
    double bv = std::min(band_v, c * scale_v);
    if (t % 4 == 3) {
      bx = band_x;
      bv = band_v;
    }
    probe(m.joint ? PhaseField<D>::random_band_limited(grid, bx, bv, rng)
                  : PhaseField<D>::random_band_limited(grid, bx, 0.0, rng));
  }
  Rng pick(seed ^ 0x5bd1e995u);
  const std::size_t packets = std::min<std::size_t>(4, top.size());
  for (std::size_t k = 0; k < packets; ++k) {
    // the argmax first, then random sites from the top percentile
    std::size_t idx = (k == 0) ? 0
                               : std::size_t(pick.uniform() *
                                             std::max<std::size_t>(1, top.size() / 100));
    if (top[idx].first == 0.0) continue;
    auto [cx, cv] = top[idx].second;
    const std::size_t nv = grid->v_size();

    // pure mode: the ratio equals |m| at the site exactly, for every p
    PhaseField<D> mode(grid, true, true);
    mode.values()[cx * nv + cv] = cplx(1.0, 0.0);
    probe(to_representation(mode, false, false, workers));

    // coherent packets around the same site over a geometric width ladder
    // plus site-radius-proportional widths; oscillating symbols push
    // localized probes above the pointwise sup, and radius-scaled entries
    // keep the probe family dilation-covariant
    Vec<D> eta0 = grid->eta_point(cx);
    Vec<D> xi0 = grid->xi_point(cv);
    double deta = 2.0 * pi / lat.x_period, dxi = 2.0 * pi / lat.v_period;
    double site_cells = std::max(norm<D>(eta0) / deta, norm<D>(xi0) / dxi);
    double cap = 0.5 * lat.band_fraction * double(std::max(lat.n_x, lat.n_v));
    std::vector<double> ladder = {2.0, 8.0, 32.0};
    for (double c : {site_cells, 2.0 * site_cells, 4.0 * site_cells})
      if (c > 2.0 && c <= cap) ladder.push_back(c);
    for (double cells : ladder) {
      double sx = cells * deta, sv = cells * dxi;
      PhaseField<D> f(grid, true, true);
      for (std::size_t xi = 0; xi < grid->x_size(); ++xi) {
        double qx = 0.0;
        Vec<D> eta = grid->eta_point(xi);
        for (int d = 0; d < D; ++d) qx += sq(eta[d] - eta0[d]);
        for (std::size_t vi = 0; vi < nv; ++vi) {
          double qv = 0.0;
          Vec<D> z = grid->xi_point(vi);
          for (int d = 0; d < D; ++d) qv += sq(z[d] - xi0[d]);
          double w = std::exp(-0.5 * qx / sq(sx)) *
                     (m.joint ? std::exp(-0.5 * qv / sq(sv)) : (vi == 0 ? 1.0 : 0.0));
          f.values()[xi * nv + vi] = cplx(w, 0.0);
        }
      }
      probe(to_representation(f, false, false, workers));
    }
  }
  return best;
}

/// sup of |m| over the lattice the estimator uses (the exact M^2 value there)
template <int D>
double lattice_sup_modulus(const MultiplierSymbol<D>& m, const MpLatticeSpec& lat = {}) {
  auto grid = make_grid<D>(lat.x_period, lat.v_period, lat.n_x, lat.n_v);
  double s = 0.0;
  for (std::size_t xi = 0; xi < grid->x_size(); ++xi) {
    Vec<D> eta = grid->eta_point(xi);
    if (m.joint) {
      for (std::size_t vi = 0; vi < grid->v_size(); ++vi)
        s = std::max(s, std::abs(m.eval(eta, grid->xi_point(vi))));
    } else {
      s = std::max(s, std::abs(m.eval(eta, Vec<D>{})));
    }
  }
  return s;
}

}  // namespace hypokin
