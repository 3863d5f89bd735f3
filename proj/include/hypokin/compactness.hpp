#pragma once

// Compactness and equiintegrability diagnostics (the Riesz-Frechet-Kolmogorov
// toolkit) and the end-to-end compactness-transfer experiments: translation
// moduli, Fourier-tail moduli, the bathtub equiintegrability modulus, and the
// two-term transfer estimate with a fitted constant.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "hypokin/csv.hpp"
#include "hypokin/cutoff.hpp"
#include "hypokin/decomposition.hpp"
#include "hypokin/field.hpp"

namespace hypokin {

enum class ModulusVars { x, v, both };

template <int D>
struct FamilySpec {
  std::function<TransportProblem<D>(double)> generator;
  std::vector<double> lambda_values;
  std::string description;
  std::uint64_t seed = 0;

  std::vector<TransportProblem<D>> materialize() const {
    std::vector<TransportProblem<D>> out;
    out.reserve(lambda_values.size());
    for (double l : lambda_values) out.push_back(generator(l));
    return out;
  }
};

/// A diagnostic mapping (parameter value -> modulus value), the universal
/// output of the compactness and regularity experiments.
struct ModulusCurve {
  std::string parameter;
  std::vector<double> params;
  std::vector<double> values;
  std::vector<double> argmax_lambda;  // family member attaining each sup
  bool sup_over_family = false;
  double p = 2.0;

  CsvTable to_table(const std::string& name) const {
    CsvTable t;
    t.name = name;
    t.header = {parameter, "modulus", "argmax_lambda"};
    for (std::size_t i = 0; i < params.size(); ++i)
      t.add_row({params[i], values[i],
                 argmax_lambda.empty() ? CsvCell{std::string("-")}
                                       : CsvCell{argmax_lambda[i]}});
    return t;
  }

  double first() const { return values.front(); }
  double last() const { return values.back(); }
};

// ---------------------------------------------------------------------------
// translation modulus

/// exact spectral phase shift f(. + h); assumes the field is well represented
/// by its lattice band (exact for band-limited data, flagged otherwise)
template <int D>
PhaseField<D> fractional_shift(const PhaseField<D>& f, const Vec<D>& h_x,
                               const Vec<D>& h_v) {
  return apply_joint_symbol(f, [&](const Vec<D>& eta, const Vec<D>& xi) {
    double ph = dot<D>(h_x, eta) + dot<D>(h_v, xi);
    return cplx(std::cos(ph), std::sin(ph));
  });
}

namespace detail {

/// axis-aligned and diagonal lattice shift vectors with |h| <= delta
template <int D>
std::vector<std::array<long, D>> lattice_shifts(double delta, double step) {
  std::vector<std::array<long, D>> shifts;
  long cmax = long(std::floor(delta / step + 1e-12));
  for (long c = 1; c <= cmax; ++c) {
    for (int d = 0; d < D; ++d) {
      std::array<long, D> s{};
      s[d] = c;
      shifts.push_back(s);
    }
    if (D > 1 && std::sqrt(double(D)) * double(c) * step <= delta) {
      std::array<long, D> diag{};
      for (int d = 0; d < D; ++d) diag[d] = c;
      shifts.push_back(diag);
    }
  }
  return shifts;
}

}  // namespace detail

/// sup over the family and over lattice shifts |h| <= delta of
/// ||f(.+h) - f||_p, for each delta in `offsets` (ascending)
template <int D>
ModulusCurve translation_modulus(const std::vector<TransportProblem<D>>& family,
                                 const std::vector<double>& lambdas, double p,
                                 const std::vector<double>& offsets,
                                 ModulusVars vars) {
  ModulusCurve curve;
  curve.parameter = "delta";
  curve.p = p;
  curve.sup_over_family = true;

  std::vector<PhaseField<D>> fields;
  for (const auto& tp : family)
    fields.push_back(to_representation(tp.f, false, false));

  for (double delta : offsets) {
    double sup = 0.0;
    double argmax = lambdas.empty() ? 0.0 : lambdas.front();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto& f = fields[i];
      const auto& g = *f.grid();
      std::array<long, D> none{};
      auto probe = [&](const std::array<long, D>& sx, const std::array<long, D>& sv) {
        PhaseField<D> d = shifted(f, sx, sv);
        d -= f;
        double val = lebesgue_norm(d, p);
        if (val > sup) {
          sup = val;
          argmax = lambdas[i];
        }
      };
      if (vars == ModulusVars::x || vars == ModulusVars::both)
        for (const auto& s : detail::lattice_shifts<D>(delta, g.x_step()))
          probe(s, none);
      if (vars == ModulusVars::v || vars == ModulusVars::both)
        for (const auto& s : detail::lattice_shifts<D>(delta, g.v_step()))
          probe(none, s);
    }
    curve.params.push_back(delta);
    curve.values.push_back(sup);
    curve.argmax_lambda.push_back(argmax);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Fourier tails

enum class TailAxis { joint, v_only };

/// || F^{-1} (1-chi)(|(eta,xi)|/R) F f ||_p (joint) or the v-only analogue.
/// The sharp indicator profile is admitted at p = 2 only.
template <int D>
double fourier_tail_modulus(const PhaseField<D>& f, double p, double R,
                            TailAxis axis, const CutoffProfile& chi,
                            int workers = 1) {
  if (chi.sharp && p != 2.0)
    throw parameter_error("sharp tail cutoff is only valid at p = 2");
  PhaseField<D> tail = apply_joint_symbol(
      f,
      [&](const Vec<D>& eta, const Vec<D>& xi) {
        double radius = (axis == TailAxis::joint)
                            ? std::sqrt(dot<D>(eta, eta) + dot<D>(xi, xi))
                            : norm<D>(xi);
        return cplx(1.0 - chi.value(radius / R), 0.0);
      },
      workers);
  return lebesgue_norm(to_representation(tail, false, false, workers), p);
}

/// || F^{-1} (1 - chi(|eta|/R) chi(|xi|/K)) F f ||_p, the paired remainder
/// the transfer estimate controls
template <int D>
double pair_tail_modulus(const PhaseField<D>& f, double p, double R, double K,
                         int workers = 1) {
  PhaseField<D> tail = apply_joint_symbol(
      f,
      [R, K](const Vec<D>& eta, const Vec<D>& xi) {
        return cplx(1.0 - cutoff_chi(norm<D>(eta) / R) * cutoff_chi(norm<D>(xi) / K),
                    0.0);
      },
      workers);
  return lebesgue_norm(to_representation(tail, false, false, workers), p);
}

// ---------------------------------------------------------------------------
// equiintegrability

/// sup over sets of measure <= m of int_A |f|^p, computed through the
/// super-level-set extremal characterization (bathtub principle). vars
/// selects sets in x only, in v only, or joint.
template <int D>
double equiintegrability_modulus(const PhaseField<D>& f, double p, double m,
                                 ModulusVars vars) {
  const PhaseField<D> ph = to_representation(f, false, false);
  const auto& g = *ph.grid();
  const std::size_t nv = g.v_size();

  // cells hold the |f|^p density per unit measure of the chosen base space:
  // joint cells carry |f|^p itself, marginal cells the integral over the
  // other block
  std::vector<double> cells;
  double cell_measure = 0.0;
  if (vars == ModulusVars::both) {
    cell_measure = g.cell_volume();
    cells.reserve(ph.values().size());
    for (const cplx& z : ph.values()) cells.push_back(std::pow(std::abs(z), p));
  } else if (vars == ModulusVars::x) {
    cell_measure = std::pow(g.x_step(), D);
    cells.assign(g.x_size(), 0.0);
    double dv = std::pow(g.v_step(), D);
    for (std::size_t xi = 0; xi < g.x_size(); ++xi) {
      double s = 0.0;
      for (std::size_t vi = 0; vi < nv; ++vi)
        s += std::pow(std::abs(ph.values()[xi * nv + vi]), p);
      cells[xi] = s * dv;
    }
  } else {
    cell_measure = std::pow(g.v_step(), D);
    cells.assign(nv, 0.0);
    double dx = std::pow(g.x_step(), D);
    for (std::size_t xi = 0; xi < g.x_size(); ++xi)
      for (std::size_t vi = 0; vi < nv; ++vi)
        cells[vi] += std::pow(std::abs(ph.values()[xi * nv + vi]), p) * dx;
  }

  if (m <= 0.0) return 0.0;
  // bathtub: fill the densest cells first, fractional last cell
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cells[a] != cells[b]) return cells[a] > cells[b];
    return a < b;
  });
  double acc = 0.0, measure = 0.0;
  for (std::size_t idx : order) {
    double take = std::min(cell_measure, m - measure);
    acc += cells[idx] * take;
    measure += take;
    if (measure >= m - 1e-15) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// transfer experiment

struct TransferPoint {
  double R = 0, K = 0;
  double pair_tail = 0;  // sup over the family
  double v_tail = 0;
  double g_norm = 0;
  double f_norm = 0;
  double rhs = 0;  // (L^D+1)(v_tail + delta g_norm) + f_norm / L
  double ratio = 0;
};

struct TransferReport {
  Verdict verdict = Verdict::pass;
  double fitted_constant = 0.0;
  double p = 2.0;
  std::vector<TransferPoint> points;
  std::string message;

  CsvTable to_table(const std::string& name = "transfer") const {
    CsvTable t;
    t.name = name;
    t.header = {"R", "K", "pair_tail", "v_tail", "g_norm", "f_norm", "rhs", "ratio"};
    for (const auto& q : points)
      t.add_row({q.R, q.K, q.pair_tail, q.v_tail, q.g_norm, q.f_norm, q.rhs, q.ratio});
    return t;
  }
};

struct TransferOptions {
  double delta = 0.5;
  double L = 4.0;
  double envelope_slack = 1.05;        // no point may exceed fit * slack
  double monotone_slack = 1e-9;        // relative slack on the tail decrease
  double norm_spread_flag = 50.0;      // family norm ratio flagging unboundedness
  double modulus_decay_flag = 0.5;     // v-modulus must fall below this fraction
};

/// Sweeps R over `R_list`, measuring the paired joint tail of the family and
/// the two-term bound (L^D+1)(v-tail at K(R) + delta ||g||_p) + ||f||_p / L
/// with one fitted constant; asserts the tail decreases monotonically.
template <int D>
TransferReport transfer_experiment(const FamilySpec<D>& family,
                                   const std::vector<double>& R_list, double p,
                                   double alpha, double beta,
                                   const TransferOptions& opt = {},
                                   int workers = 1) {
  TransferReport rep;
  rep.p = p;
  auto members = family.materialize();
  if (members.empty()) throw config_error("transfer experiment: empty family");

  // hypothesis check 1: uniform boundedness proxy across the sampled family
  double fmin = 1e300, fmax = 0.0;
  for (const auto& tp : members) {
    double n = lebesgue_norm(to_representation(tp.f, false, false, workers), p);
    fmin = std::min(fmin, n);
    fmax = std::max(fmax, n);
  }
  if (fmax > opt.norm_spread_flag * fmin) {
    rep.verdict = Verdict::out_of_hypothesis;
    rep.message = "family norms spread beyond the boundedness proxy";
    return rep;
  }

  // hypothesis check 2: compactness in v via the translation modulus
  const auto& g0 = *members.front().f.grid();
  std::vector<double> deltas = {g0.v_step(), 4.0 * g0.v_step(), 16.0 * g0.v_step()};
  ModulusCurve vmod =
      translation_modulus(members, family.lambda_values, p, deltas, ModulusVars::v);
  if (vmod.values.front() > opt.modulus_decay_flag * vmod.values.back()) {
    rep.verdict = Verdict::out_of_hypothesis;
    rep.message = "velocity translation modulus does not decay";
    return rep;
  }

  for (double R : R_list) {
    TransferPoint q;
    q.R = R;
    q.K = k_of_r(R, opt.delta, alpha, beta);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& tp = members[i];
      q.pair_tail = std::max(q.pair_tail, pair_tail_modulus(tp.f, p, R, q.K, workers));
      q.v_tail = std::max(
          q.v_tail, fourier_tail_modulus(tp.f, p, q.K, TailAxis::v_only,
                                         CutoffProfile::smooth(), workers));
      q.g_norm = std::max(
          q.g_norm, lebesgue_norm(to_representation(tp.g, false, false, workers), p));
      q.f_norm = std::max(
          q.f_norm, lebesgue_norm(to_representation(tp.f, false, false, workers), p));
    }
    double ld = std::pow(opt.L, D) + 1.0;
    q.rhs = ld * (q.v_tail + opt.delta * q.g_norm) + q.f_norm / opt.L;
    q.ratio = q.pair_tail / q.rhs;
    rep.points.push_back(q);
  }

  for (const auto& q : rep.points)
    rep.fitted_constant = std::max(rep.fitted_constant, q.ratio);

  bool envelope_ok = true, monotone_ok = true;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    if (rep.points[i].pair_tail >
        opt.envelope_slack * rep.fitted_constant * rep.points[i].rhs)
      envelope_ok = false;
    if (i > 0 && rep.points[i].pair_tail >
                     rep.points[i - 1].pair_tail * (1.0 + opt.monotone_slack))
      monotone_ok = false;
  }
  if (!envelope_ok || !monotone_ok) {
    rep.verdict = Verdict::fail;
    rep.message = !monotone_ok ? "joint tail is not monotonically decreasing in R"
                               : "a sweep point escapes the fitted envelope";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// nonconcentration experiment

struct NonconcentrationReport {
  Verdict verdict = Verdict::pass;
  double hypothesis_norm = 0.0;    // sup_lambda || v.grad_x f ||_{L^p W^{-k,p}_v}
  double hypothesis_spread = 0.0;  // max over min of that norm across the family
  ModulusCurve curve;
  std::string message;
};

/// Verifies the dual-norm transport bound (its growth along the family is the
/// unboundedness signal), then reports the equiintegrability modulus of |f|^p
/// (joint) over a mass sweep, sup over the family.
template <int D>
NonconcentrationReport nonconcentration_experiment(
    const FamilySpec<D>& family, double p, double k,
    const std::vector<double>& mass_list, double hypothesis_flag_spread = 3.0,
    int workers = 1) {
  NonconcentrationReport rep;
  auto members = family.materialize();

  double hmin = 1e300;
  for (const auto& tp : members) {
    double h = sobolev_norm(transport_apply(tp.f, workers), -k, p, Axis::v, workers);
    rep.hypothesis_norm = std::max(rep.hypothesis_norm, h);
    hmin = std::min(hmin, h);
  }
  rep.hypothesis_spread = rep.hypothesis_norm / hmin;
  if (rep.hypothesis_spread > hypothesis_flag_spread) {
    rep.verdict = Verdict::out_of_hypothesis;
    rep.message = "transport dual norm grows along the family";
  }

  rep.curve.parameter = "mass";
  rep.curve.p = p;
  rep.curve.sup_over_family = true;
  for (double m : mass_list) {
    double sup = 0.0, arg = family.lambda_values.front();
    for (std::size_t i = 0; i < members.size(); ++i) {
      double val = equiintegrability_modulus(members[i].f, p, m, ModulusVars::both);
      if (val > sup) {
        sup = val;
        arg = family.lambda_values[i];
      }
    }
    rep.curve.params.push_back(m);
    rep.curve.values.push_back(sup);
    rep.curve.argmax_lambda.push_back(arg);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// tail <-> translation equivalence

struct EquivalenceReport {
  ModulusCurve translation;  // descending delta
  ModulusCurve tail;         // ascending R
  bool translation_vanishes = false;
  bool tail_vanishes = false;
  bool translation_stalls = false;
  bool tail_stalls = false;
  bool equivalent = false;
};

/// Classifies co-vanishing / co-stalling of the translation modulus (delta
/// decreasing) against the joint Fourier-tail modulus (R increasing).
/// vanish: final <= vanish_fraction * initial; stall: final >= stall_fraction.
template <int D>
EquivalenceReport equivalence_experiment(const FamilySpec<D>& family, double p,
                                         const std::vector<double>& deltas_desc,
                                         const std::vector<double>& R_list_asc,
                                         double vanish_fraction = 0.25,
                                         double stall_fraction = 0.5) {
  EquivalenceReport rep;
  auto members = family.materialize();

  std::vector<double> deltas_asc(deltas_desc.rbegin(), deltas_desc.rend());
  ModulusCurve tr = translation_modulus(members, family.lambda_values, p, deltas_asc,
                                        ModulusVars::both);
  // re-order descending so "last" is the delta -> 0 end
  rep.translation.parameter = "delta";
  rep.translation.p = p;
  for (std::size_t i = tr.params.size(); i-- > 0;) {
    rep.translation.params.push_back(tr.params[i]);
    rep.translation.values.push_back(tr.values[i]);
  }

  rep.tail.parameter = "R";
  rep.tail.p = p;
  for (double R : R_list_asc) {
    double sup = 0.0;
    for (const auto& tp : members)
      sup = std::max(sup, fourier_tail_modulus(tp.f, p, R, TailAxis::joint,
                                               CutoffProfile::smooth()));
    rep.tail.params.push_back(R);
    rep.tail.values.push_back(sup);
  }

  auto classify = [&](const ModulusCurve& c, bool& vanishes, bool& stalls) {
    double ratio = c.last() / std::max(c.first(), 1e-300);
    vanishes = ratio <= vanish_fraction;
    stalls = ratio >= stall_fraction;
  };
  classify(rep.translation, rep.translation_vanishes, rep.translation_stalls);
  classify(rep.tail, rep.tail_vanishes, rep.tail_stalls);
  rep.equivalent = (rep.translation_vanishes == rep.tail_vanishes) &&
                   (rep.translation_stalls == rep.tail_stalls);
  return rep;
}

}  // namespace hypokin
