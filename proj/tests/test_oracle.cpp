#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netpdae/experiments.hpp"
#include "netpdae/oracle.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace netpdae;
using std::numbers::pi;

TEST_CASE("split index") {
  CHECK(integer_split_index(eps_for_split_index(7)) == 7);
  CHECK(split_index(1.0 / (4.0 * pi * pi)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(integer_split_index(1e-3), std::invalid_argument);
  CHECK_THROWS_AS(split_index(0.0), std::invalid_argument);
}

TEST_CASE("modal amplitudes solve eps P'' + P' + (pi k)^2 P = 0 in all three regimes") {
  const SeriesParams sp{0.55, eps_for_split_index(10), 40};
  double worst = 0.0;
  for (int k = 1; k <= sp.kmax; ++k)
    for (double t : {0.0, 1e-4, 1e-3, 5e-3, 0.02, 0.1, 0.5}) {
      const auto [P, dP, ddP] = pressure_mode(k, t, sp);
      const double w = pi * k;
      const double scale = std::abs(dP) + w * w * std::abs(P) + sp.eps * std::abs(ddP);
      if (scale > 1e-200) worst = std::max(worst, std::abs(sp.eps * ddP + dP + w * w * P) / scale);
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("derivatives agree with finite differences and with the flux amplitude") {
  const SeriesParams sp{0.55, eps_for_split_index(3), 10};
  const double h = 1e-7;
  for (int k : {1, 2, 3, 4, 9})
    for (double t : {1e-3, 0.01, 0.05}) {
      const auto [P, dP, ddP] = pressure_mode(k, t, sp);
      const auto up = pressure_mode(k, t + h, sp), dn = pressure_mode(k, t - h, sp);
      CHECK(dP == doctest::Approx((up[0] - dn[0]) / (2 * h)).epsilon(1e-6));
      CHECK(ddP == doctest::Approx((up[1] - dn[1]) / (2 * h)).epsilon(1e-6));
      CHECK(dP == doctest::Approx(std::pow(k, 1.0 - sp.alpha) * flux_mode(k, t, sp)).epsilon(1e-12));
    }
}

TEST_CASE("initial traces match the prescribed data") {
  const SeriesParams sp{0.55, eps_for_split_index(5), 300};
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    const auto [p, m] = series_solution_hyperbolic(x, 0.0, sp);
    CHECK(p == 0.0);
    CHECK(m == doctest::Approx(series_initial_flux(x, sp.alpha, sp.kmax)).epsilon(1e-12));
  }
  // p vanishes at both ends for all t
  for (double t : {0.01, 0.2}) {
    CHECK(std::abs(series_solution_hyperbolic(0.0, t, sp).first) < 1e-14);
    CHECK(std::abs(series_solution_hyperbolic(1.0, t, sp).first) < 1e-12);
  }
  CHECK_THROWS_AS(series_solution_hyperbolic(0.5, 0.1, SeriesParams{0.55, eps_for_split_index(5), 5}),
                  std::invalid_argument);
}

TEST_CASE("flux integral is the antiderivative of the flux series") {
  const double a = 0.2, b = 0.45;
  std::vector<double> splits;
  for (int i = 1; i < 25; ++i) splits.push_back(a + i * 0.01);
  const double num = integrate([](double x) { return series_initial_flux(x, 0.55, 20); }, a, b, splits);
  CHECK(series_initial_flux_integral(a, b, 0.55, 20) == doctest::Approx(num).epsilon(1e-12));
}

TEST_CASE("the squared C(0,T;L2) norm lies between the bounds") {
  for (int K : {3, 6, 12}) {
    const SeriesParams sp{0.55, eps_for_split_index(K), 20 * K};
    double peak = 0.0;
    for (double t = sp.eps / 20.0; t < 1.0; t *= 1.05) peak = std::max(peak, series_pressure_norm2(t, sp));
    INFO("K " << K);
    CHECK(sharpness_lower_bound(sp) <= peak);
    CHECK(peak <= energy_upper_bound(sp));
  }
}

TEST_CASE("parabolic limit C2 solves the heat equation") {
  const double h = 1e-4;
  for (double x : {0.2, 0.6})
    for (double t : {0.01, 0.1}) {
      auto p = [&](double xx, double tt) { return parabolic_limit_solution(LimitCase::C2, xx, tt, 0.55, 200).p0; };
      const double pt = (p(x, t + h) - p(x, t - h)) / (2 * h);
      const double pxx = (p(x + h, t) - 2 * p(x, t) + p(x - h, t)) / (h * h);
      CHECK(pt == doctest::Approx(pxx).epsilon(1e-4));
      const double px = (p(x + h, t) - p(x - h, t)) / (2 * h);
      CHECK(parabolic_limit_solution(LimitCase::C2, x, t, 0.55, 200).m0 == doctest::Approx(-px).epsilon(1e-6));
    }
  const LimitSolution s = parabolic_limit_solution(LimitCase::C2, 0.0, 0.05, 0.55, 200);
  const LimitSolution e = parabolic_limit_solution(LimitCase::C2, 1.0, 0.05, 0.55, 200);
  CHECK(s.lambda0[0] == doctest::Approx(-s.m0));
  CHECK(e.lambda0[1] == doctest::Approx(e.m0));
  const LimitSolution c1 = parabolic_limit_solution(LimitCase::C1, 0.3, 0.2, 0.55, 50);
  CHECK(c1.p0 == 0.0);
  CHECK(c1.m0 == 0.0);
}

TEST_CASE("hyperbolic solver converges to the series solution under mesh refinement") {
  const SeriesParams sp{0.55, eps_for_split_index(2), 400};
  const double T = 0.05;
  std::vector<double> hs, errs;
  for (int N : {8, 16, 32}) {
    Scenario sc = builtin_scenario("single-pipe");
    sc.solver.eps = sp.eps;
    sc.initial.m[0] = CosineSeries{sp.alpha, sp.kmax};
    const Problem pb = make_problem(sc, MeshParams::uniform(N));
    const Trajectory tr =
        solve_hyperbolic_reference(pb.sys, pb.loads, pb.p_init, pb.m_init, TimeGrid(T, 400), tableau("radau2"), sp.eps);
    Eigen::VectorXd exact(pb.sys.n_p);
    for (int i = 0; i <= N; ++i)
      exact[pb.sys.potential_dof(0, i)] = series_solution_hyperbolic(pb.sys.node_x(0, i), T, sp).first;
    const Eigen::VectorXd d = tr.at(Field::p).col(tr.stored() - 1) - exact;
    hs.push_back(1.0 / N);
    errs.push_back(std::sqrt(d.dot(pb.sys.M2 * d)));
  }
  INFO("errors " << errs[0] << " " << errs[1] << " " << errs[2]);
  CHECK(errs[2] < errs[0]);
  CHECK(testing::loglog_slope(hs, errs) > 0.0);
}
