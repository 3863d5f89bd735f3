#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypokin/analytic.hpp"
#include "hypokin/counterexamples.hpp"

using namespace hypokin;

namespace {

double bump(double v) { return cutoff_chi(v / 1.8); }
double bump_prime(double v) { return cutoff_chi_prime(v / 1.8) / 1.8; }

}  // namespace

TEST_CASE("oscillating family: relation, mass, moments") {
  Rng rng(5);
  for (double eps : {0.25, 0.125, 0.0625, 0.03125}) {
    OscillatingFamily fam = oscillating_family(eps);

    // the defining relation v d_x f = d_v g, pointwise
    for (int i = 0; i < 400; ++i) {
      double x = rng.uniform(-1.2 * eps, 1.2 * eps);
      double v = rng.uniform(-pi, pi);
      CHECK(fam.relation_residual(x, v) < 1e-8);
    }

    // mass over v in [-pi, pi] is eps-independent: |chi|_1 * 4
    double expected = 4.0 * adaptive_simpson([](double y) { return cutoff_chi(y); },
                                             -1.5, 1.5, 1e-12);
    CHECK(fam.l1_f(pi) == doctest::Approx(expected).epsilon(1e-6));

    // the moment identity: int f phi dv = -chi(x/eps) int sin(v/eps) phi' dv
    for (double x : {0.0, 0.4 * eps}) {
      double direct = fam.moment(x, bump, pi);
      double ibp = fam.moment_ibp(x, bump_prime, pi);
      CHECK(std::abs(direct - ibp) < 1e-7 * std::max(1.0, std::abs(direct)));
    }
  }

  // moments vanish in L^1 monotonically as eps decreases
  std::vector<double> decay;
  for (double eps : {0.25, 0.125, 0.0625, 0.03125})
    decay.push_back(oscillating_family(eps).moment_l1(bump_prime, pi));
  for (std::size_t i = 1; i < decay.size(); ++i)
    CHECK((decay[i] < decay[i - 1] || decay[i] < 1e-12));
  CHECK(decay.back() < 0.05 * decay.front());

  CHECK_THROWS_AS(oscillating_family(0.0), parameter_error);
}

TEST_CASE("oscillating family on the lattice: modulus contrast") {
  auto g = make_grid<1>(2.0, 2 * pi, 1024, 1024);
  std::vector<double> eps_list = {0.25, 0.125, 0.0625, 0.03125};

  FamilySpec<1> fam;
  fam.description = "oscillating counterexample";
  fam.lambda_values = eps_list;
  fam.generator = [g](double eps) {
    PhaseField<1> f = oscillating_family(eps).sample(g);
    return make_transport_problem(std::move(f), 0.0, 0.0, 1.0);
  };
  auto members = fam.materialize();

  // v-translation modulus at L^1 decays along the dyadic shift ladder
  double dv = g->v_step();
  std::vector<double> deltas = {dv, 4 * dv, 16 * dv, 64 * dv};
  ModulusCurve vm = translation_modulus(members, eps_list, 1.0, deltas, ModulusVars::v);
  CHECK(vm.values.front() < 0.25 * vm.values.back());

  // while the x-translation modulus stays bounded below at the concentration
  // scales (shifts comparable to the smallest bump width)
  double dx = g->x_step();
  ModulusCurve xm = translation_modulus(members, eps_list, 1.0,
                                        {16 * dx, 64 * dx, 256 * dx}, ModulusVars::x);
  double xmax = *std::max_element(xm.values.begin(), xm.values.end());
  double xmin = *std::min_element(xm.values.begin(), xm.values.end());
  CHECK(xmin > 0.2 * xmax);

  // joint equiintegrability modulus stays above a fixed mass floor
  for (const auto& tp : members)
    CHECK(equiintegrability_modulus(tp.f, 1.0, 0.05, ModulusVars::both) > 0.1);
}

TEST_CASE("spreading family: relation, mass, moments") {
  Rng rng(7);
  std::vector<double> masses, moments;
  for (double n : {1.0, 2.0, 4.0}) {
    SpreadingFamily fam = spreading_family(n);

    for (int i = 0; i < 2000; ++i) {
      Vec<2> x{rng.uniform(-1.0, 1.0) / (n * n), rng.uniform(-1.0, 1.0) * n};
      Vec<2> v{rng.uniform(-1.0, 1.0) / n, rng.uniform(-1.0, 1.0) * n};
      CHECK(fam.relation_residual(x, v) < 1e-8);
    }

    masses.push_back(fam.l1_mass());
    moments.push_back(fam.moment_l1(
        [](const Vec<2>& v) { return cutoff_chi(norm<2>(v) / 2.0); }, 1.0));
  }
  for (double m : masses) CHECK(m == doctest::Approx(masses.front()).epsilon(1e-6));
  for (std::size_t i = 1; i < moments.size(); ++i)
    CHECK(moments[i] < moments[i - 1]);
  CHECK(moments.back() < 0.5 * moments.front());

  // an odd velocity profile cannot produce compactly supported sources
  CHECK_THROWS_AS(
      spreading_family_with_profile(2.0, [](double t) { return t * cutoff_chi(t); }),
      profile_error);
}

TEST_CASE("dispersion inequality") {
  Rng rng(13);
  // inequality never violated on randomized fields and times
  for (int trial = 0; trial < 12; ++trial) {
    AnalyticField<1> f0;
    int atoms = 1 + int(rng.uniform() * 2);
    for (int a = 0; a < atoms; ++a) {
      GaussAtom<1> g;
      g.amplitude = cplx(rng.uniform(0.2, 2.0), 0.0);
      g.center_x = {rng.uniform(-1, 1)};
      g.center_v = {rng.uniform(-1, 1)};
      g.width_x = rng.uniform(0.3, 1.5);
      g.width_v = rng.uniform(0.3, 1.5);
      f0.add(g);
    }
    double t = rng.log_uniform(0.5, 8.0);
    DispersionPair<1> pair = dispersion_check(f0, t);
    CHECK(pair.holds());
  }

  // time-decay slope of the left side approaches -D for v-spread data
  auto slope_for = [](auto field, const std::vector<double>& ts) {
    std::vector<double> lt, ll;
    for (double t : ts) {
      auto pair = dispersion_check(field, t);
      lt.push_back(std::log(t));
      ll.push_back(std::log(pair.lhs));
    }
    return fit_slope(lt, ll);
  };
  AnalyticField<1> narrow;
  GaussAtom<1> a1;
  a1.width_x = 0.25;
  a1.width_v = 2.0;
  narrow.add(a1);
  double s1 = slope_for(narrow, {1, 2, 4, 8});
  CHECK(s1 == doctest::Approx(-1.0).epsilon(0.1));

  AnalyticField<2> narrow2;
  GaussAtom<2> a2;
  a2.width_x = 0.25;
  a2.width_v = 2.0;
  narrow2.add(a2);
  std::vector<double> lt, ll;
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    Vec<2> peak{};  // centered atom: the drift maximizer is the origin
    auto pair = dispersion_check<2>(narrow2, t, &peak);
    CHECK(pair.holds());
    lt.push_back(std::log(t));
    ll.push_back(std::log(pair.lhs));
  }
  CHECK(fit_slope(lt, ll) == doctest::Approx(-2.0).epsilon(0.05));

  // concentrated-in-v data: large right side, slack inequality
  AnalyticField<1> conc;
  GaussAtom<1> a3;
  a3.width_x = 1.0;
  a3.width_v = 0.05;
  conc.add(a3);
  auto pair = dispersion_check(conc, 2.0);
  CHECK(pair.holds());
  CHECK(pair.rhs > 3.0 * pair.lhs);

  // the 1D mixing measure matches the change-of-variables value |A| * 2 / t
  auto [sup, bound] = mixing_measure_check(0.7, 2.0);
  CHECK(sup == doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("semi-Lagrangian solver: free transport and parabolas") {
  auto g = make_grid<1>(2 * pi, 16.0, 256, 256);
  PhaseField<1> f0 = PhaseField<1>::sample(g, [](const Vec<1>& x, const Vec<1>& v) {
    return cplx(std::exp(-8.0 * sq(std::sin(0.5 * x[0]))) * std::exp(-sq(v[0])), 0.0);
  });

  // F = 0: the solution is f0(x - t v, v)
  std::vector<double> zero(g->n_x(), 0.0);
  double T = 0.5;
  ForcedTrajectory traj = solve_1d_forced(f0, zero, nullptr, T, 0.01);
  PhaseField<1> exact = PhaseField<1>::sample(g, [&](const Vec<1>& x, const Vec<1>& v) {
    double y = x[0] - T * v[0];
    return cplx(std::exp(-8.0 * sq(std::sin(0.5 * y))) * std::exp(-sq(v[0])), 0.0);
  });
  PhaseField<1> diff = traj.state;
  diff -= exact;
  CHECK(lebesgue_norm(diff, 2.0) / lebesgue_norm(exact, 2.0) < 2e-5);

  // constant force: exact parabolic characteristics
  std::vector<double> constant(g->n_x(), 0.8);
  ForcedTrajectory traj2 = solve_1d_forced(f0, constant, nullptr, T, 0.005);
  PhaseField<1> exact2 = PhaseField<1>::sample(g, [&](const Vec<1>& x, const Vec<1>& v) {
    // backward characteristics of dx/dt = v, dv/dt = F
    double vb = v[0] - 0.8 * T;
    double xb = x[0] - v[0] * T + 0.5 * 0.8 * T * T;
    return cplx(std::exp(-8.0 * sq(std::sin(0.5 * xb))) * std::exp(-sq(vb)), 0.0);
  });
  PhaseField<1> diff2 = traj2.state;
  diff2 -= exact2;
  CHECK(lebesgue_norm(diff2, 2.0) / lebesgue_norm(exact2, 2.0) < 5e-4);

  // mass conservation over 100 steps
  std::vector<double> wavy(g->n_x());
  for (std::size_t i = 0; i < g->n_x(); ++i) wavy[i] = 0.5 * std::cos(g->x_node(i));
  ForcedTrajectory traj3 = solve_1d_forced(f0, wavy, nullptr, 1.0, 0.01);
  CHECK(traj3.times.size() == 101);
  CHECK(traj3.mass_drift() < 1e-6);
  CsvTable tt = traj3.to_table();
  CHECK(tt.rows.size() == 101);
  CHECK(tt.header.front() == "time");

  // self-convergence at the interpolation order under joint refinement
  auto error_at = [&](std::size_t n) {
    auto gr = make_grid<1>(2 * pi, 16.0, n, n);
    PhaseField<1> h0 = PhaseField<1>::sample(gr, [](const Vec<1>& x, const Vec<1>& v) {
      return cplx(std::exp(-8.0 * sq(std::sin(0.5 * x[0]))) * std::exp(-sq(v[0])), 0.0);
    });
    std::vector<double> F(gr->n_x());
    for (std::size_t i = 0; i < gr->n_x(); ++i) F[i] = 0.5 * std::cos(gr->x_node(i));
    ForcedTrajectory tr = solve_1d_forced(h0, F, nullptr, 0.25, 2.0 / double(n));
    // compare against a fine reference on the same times
    auto gf = make_grid<1>(2 * pi, 16.0, 512, 512);
    PhaseField<1> r0 = PhaseField<1>::sample(gf, [](const Vec<1>& x, const Vec<1>& v) {
      return cplx(std::exp(-8.0 * sq(std::sin(0.5 * x[0]))) * std::exp(-sq(v[0])), 0.0);
    });
    std::vector<double> Ff(gf->n_x());
    for (std::size_t i = 0; i < gf->n_x(); ++i) Ff[i] = 0.5 * std::cos(gf->x_node(i));
    ForcedTrajectory ref = solve_1d_forced(r0, Ff, nullptr, 0.25, 2.0 / 512.0);
    // sample both on the coarse lattice
    double err = 0.0;
    std::size_t skip = 512 / n;
    for (std::size_t xi = 0; xi < n; ++xi)
      for (std::size_t vi = 0; vi < n; ++vi)
        err = std::max(err, std::abs(tr.state.at(xi, vi) -
                                     ref.state.at(xi * skip, vi * skip)));
    return err;
  };
  double e64 = error_at(64), e128 = error_at(128);
  CHECK(e128 < e64 / 4.0);  // at least second order in the joint refinement

  // CFL guard
  CHECK_THROWS_AS(solve_1d_forced(f0, zero, nullptr, 1.0, 2.0), step_error);
}

TEST_CASE("height truncation") {
  auto g = make_grid<1>(2 * pi, 8.0, 64, 64);
  PhaseField<1> f = PhaseField<1>::sample(g, [](const Vec<1>& x, const Vec<1>& v) {
    return cplx(3.0 * std::cos(x[0]) * std::exp(-v[0] * v[0]), 0.0);
  });

  // |f| <= Lambda everywhere: the split is trivial
  auto [a1, a2] = truncation_split(f, 10.0);
  PhaseField<1> d = a1;
  d -= f;
  CHECK(lebesgue_norm(d, 2.0) < 1e-14);
  CHECK(lebesgue_norm(a2, 2.0) < 1e-14);

  // range bound and exact reassembly
  auto [b1, b2] = truncation_split(f, 1.0);
  double gmax = 0.0;
  for (double u = -6; u <= 6; u += 1e-3) gmax = std::max(gmax, std::abs(truncation_gamma(u)));
  CHECK(lebesgue_norm(b1, std::numeric_limits<double>::infinity()) <= gmax + 1e-12);
  PhaseField<1> sum = b1;
  sum += b2;
  sum -= f;
  CHECK(lebesgue_norm(sum, 2.0) < 1e-14);
  // f2 vanishes where |f| <= Lambda
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (std::abs(f.values()[i].real()) <= 1.0) CHECK(std::abs(b2.values()[i]) == 0.0);

  // the tail mass vanishes as Lambda grows
  double m1 = lebesgue_norm(truncation_split(f, 0.5).second, 1.0);
  double m2 = lebesgue_norm(truncation_split(f, 1.5).second, 1.0);
  double m3 = lebesgue_norm(truncation_split(f, 3.5).second, 1.0);
  CHECK(m2 < m1);
  CHECK(m3 < 1e-12);

  CHECK_THROWS_AS(truncation_split(f, -1.0), parameter_error);
}

TEST_CASE("one-dimensional averaging experiment") {
  auto g = make_grid<1>(2 * pi, 16.0, 512, 128);
  std::vector<OnedimMember> family;
  for (int m = 0; m < 5; ++m) {
    PhaseField<1> f0 = PhaseField<1>::sample(g, [m](const Vec<1>& x, const Vec<1>& v) {
      double xc = 0.3 * m;
      return cplx((1.2 + 0.1 * m) * std::exp(-6.0 * sq(std::sin(0.5 * (x[0] - xc)))) *
                      std::exp(-sq(v[0] - 0.1 * m)),
                  0.0);
    });
    std::vector<double> F(g->n_x());
    for (std::size_t i = 0; i < g->n_x(); ++i)
      F[i] = 0.6 * std::cos(g->x_node(i) + 0.5 * m) +
             0.3 * std::sin(2.0 * g->x_node(i));
    family.push_back({std::move(f0), std::move(F)});
  }

  OnedimReport rep = onedim_compactness_experiment(
      family, 0.5, 0.01, 1.5, {1.0, 10.0, 100.0},
      [](double v) { return cutoff_chi(v / 3.0); }, 8);
  CHECK(rep.verdict == Verdict::pass);
  REQUIRE(rep.moment_moduli.size() == 3);
  for (const auto& curve : rep.moment_moduli) {
    // monotone decay to below 1e-2 of the initial value
    for (std::size_t i = 1; i < curve.values.size(); ++i)
      CHECK(curve.values[i] <= curve.values[i - 1] * (1.0 + 1e-9));
    CHECK(curve.values.back() <= 1e-2 * curve.values.front());
  }
  // the truncation tail vanishes for large Lambda
  CHECK(rep.f2_mass.back() < 1e-12);
  CHECK(rep.f2_mass.front() >= rep.f2_mass.back());
}

TEST_CASE("snapshot dump") {
  auto g = make_grid<1>(2 * pi, 8.0, 16, 16);
  PhaseField<1> f = PhaseField<1>::sample(g, [](const Vec<1>& x, const Vec<1>& v) {
    return cplx(std::cos(x[0]) * std::exp(-v[0] * v[0]), 0.0);
  });
  std::string path = "/tmp/hypokin_snapshot_test.bin";
  write_snapshot(f, 1.25, path);
  std::ifstream is(path, std::ios::binary);
  REQUIRE(bool(is));
  std::string header;
  std::getline(is, header);
  CHECK(header == "hypokin-snapshot");
  std::string line;
  bool saw_time = false;
  while (std::getline(is, line) && !line.empty())
    if (line == "time = 1.25") saw_time = true;
  CHECK(saw_time);
  std::vector<double> data(16 * 16);
  is.read(reinterpret_cast<char*>(data.data()), std::streamsize(data.size() * 8));
  CHECK(is.gcount() == std::streamsize(data.size() * 8));
  CHECK(data[0] == f.values()[0].real());
  std::remove(path.c_str());
}
