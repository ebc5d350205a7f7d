#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netpdae/experiments.hpp"
#include "netpdae/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace netpdae;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("parameter grids") {
  const auto t = halving_sequence(0.2, 13);
  REQUIRE(t.size() == 14);
  CHECK(t[13] == doctest::Approx(2.44140625e-05).epsilon(1e-12));
  const auto e = eps_grid();
  REQUIRE(e.size() == 16);
  CHECK(e[0] == doctest::Approx(1.0 / (8.0 * std::sqrt(2.0))));
  CHECK(e[15] == doctest::Approx(1.0 / 2048.0));
}

TEST_CASE("modal pipe matches the hyperbolic time stepper") {
  const int N = 12;
  const double eps = 0.01;
  Scenario sc = builtin_scenario("single-pipe");
  sc.solver.eps = eps;
  sc.initial.m[0] = CosineSeries{0.55, 500};
  const Problem pb = make_problem(sc, MeshParams::uniform(N));
  const ModalPipe modal(N, pb.m_init);
  const double T = 0.1;
  const Trajectory tr =
      solve_hyperbolic_reference(pb.sys, pb.loads, pb.p_init, pb.m_init, TimeGrid(T, 2000), tableau("radau3"), eps);
  const Eigen::VectorXd p = tr.at(Field::p).col(tr.stored() - 1).tail(N - 1);
  CHECK((p - modal.pressure(T, eps)).norm() <= 1e-8 * p.norm());
  const Eigen::VectorXd d = tr.at(Field::p).col(tr.stored() - 1);
  CHECK(modal.pressure_norm(T, eps) == doctest::Approx(std::sqrt(d.dot(pb.sys.M2 * d))).epsilon(1e-8));
  CHECK(modal.pressure_norm(0.0, eps) == 0.0);
}

TEST_CASE("modal C-norm finds the boundary-layer peak") {
  const int N = 20;
  const ModalPipe pipe(N, cosine_series_flux(N, 0.55, 200));
  const double eps = 1e-3;
  double brute = 0.0;
  for (int k = 0; k <= 200000; ++k) brute = std::max(brute, pipe.pressure_norm(k * 1e-5, eps));
  CHECK(pipe.c_norm(eps, 2.0) >= brute * (1.0 - 1e-9));
  CHECK(pipe.c_norm(eps, 2.0) <= brute * (1.0 + 1e-4));
}

TEST_CASE("projected cosine series") {
  const Vector m = cosine_series_flux(5, 0.55, 100);
  for (int e = 0; e < 5; ++e)
    CHECK(m[e] == doctest::Approx(5.0 * series_initial_flux_integral(e / 5.0, (e + 1) / 5.0, 0.55, 100)));
}

TEST_CASE("coarsest mesh exponent") {
  ConvEpsConfig cfg;
  cfg.meshes = {6};
  const auto rows = run_convergence_eps(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].errors.size() == 16);
  CHECK(std::abs(rows[0].fit.alpha - 0.7741) <= 0.02);
}

TEST_CASE("zero data gives zero errors") {
  ConvTauConfig cfg;
  cfg.scenario.data = {};
  for (auto& [e, p] : cfg.scenario.initial.p) p = PiecewisePolynomial::constant(0.0);
  cfg.scenario.initial.m.clear();
  cfg.taus = {0.2, 0.1};
  cfg.ref_refine = 4;
  const ConvTauResult r = run_convergence_tau(cfg);
  for (const auto& row : r.rows) {
    CHECK(row.err_p0_euler == 0.0);
    CHECK(row.err_phat_euler == 0.0);
    CHECK(row.err_p0_radau == 0.0);
    CHECK(row.err_phat_radau == 0.0);
  }
  CHECK(r.reference_diff == 0.0);
}

TEST_CASE("small tau study on the damped variant") {
  ConvTauConfig cfg;
  cfg.scenario = with_reaction(cfg.scenario, 1.0);
  cfg.taus = halving_sequence(0.2, 4);
  cfg.ref_refine = 16;
  const ConvTauResult r = run_convergence_tau(cfg);
  REQUIRE(r.rows.size() == 5);
  // Euler errors decrease monotonically, Radau reaches the eps plateau
  for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].err_p0_euler < r.rows[k - 1].err_p0_euler);
  CHECK(r.rows.back().err_phat_radau < r.rows.back().err_p0_radau / 10.0);
  CHECK(r.max_constraint_residual < 1e-10);

  const std::string a = tmp("netpdae_fig2_a.csv"), b = tmp("netpdae_fig2_b.csv");
  write_conv_tau_csv(r, a);
  write_conv_tau_csv(run_convergence_tau(cfg), b);
  const std::string text = slurp(a);
  CHECK(text.rfind("tau,err_p0_euler,err_phat_euler,err_p0_radau,err_phat_radau\n", 0) == 0);
  CHECK(text == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());

  cfg.taus = {0.2, 0.3};
  CHECK_THROWS_AS(run_convergence_tau(cfg), std::invalid_argument);
  cfg.taus = {0.2};
  cfg.ref_refine = 6;
  CHECK_THROWS_AS(run_convergence_tau(cfg), std::invalid_argument);
}

TEST_CASE("eps order on the damped variant") {
  EpsOrderConfig cfg;
  cfg.scenario = with_reaction(cfg.scenario, 1.0);
  cfg.eps = {1e-2, 1e-3};
  cfg.tau = 0.2 / 64;
  cfg.ref_refine = 16;
  const EpsOrderResult r = run_eps_order_study(cfg);
  REQUIRE(r.fit_ok);
  CHECK(std::abs(r.fit_p0.alpha - 1.0) < 0.15);
  CHECK(r.fit_phat.alpha > r.fit_p0.alpha + 0.5);
  CHECK(r.max_constraint_residual < 1e-10);
  const std::string path = tmp("netpdae_order.csv");
  write_eps_order_csv(r, path);
  CHECK(slurp(path).rfind("eps,err_p0,err_phat,err_p0_half_tau,err_phat_half_tau\n", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("literal scenario has no eps dependence to fit") {
  EpsOrderConfig cfg;
  cfg.eps = {1e-2, 1e-3};
  cfg.tau = 0.2 / 16;
  cfg.ref_refine = 8;
  const EpsOrderResult r = run_eps_order_study(cfg);
  for (const auto& row : r.rows) {
    CHECK(row.err_p0 < 1e-10);
    CHECK(row.err_phat < 1e-10);
  }
}

TEST_CASE("plot scripts") {
  const std::string path = tmp("netpdae_plot.py");
  for (const char* kind : {"conv-tau", "conv-eps", "eps-order"}) {
    write_plot_script(kind, "data.csv", path);
    CHECK(slurp(path).find("read_csv('data.csv')") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_plot_script("fig9", "x.csv", path), std::invalid_argument);
}
