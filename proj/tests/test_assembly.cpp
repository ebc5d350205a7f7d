#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netpdae/config.hpp"

#include <cmath>

using namespace netpdae;

namespace {

Network pipe(double length, PiecewisePolynomial d = PiecewisePolynomial::constant(1.0),
             PiecewisePolynomial a = PiecewisePolynomial::constant(0.0)) {
  NetworkSpec s;
  s.vertices = {{"l", VertexKind::dirichlet}, {"r", VertexKind::flux}};
  s.edges = {{"e", "l", "r", length, a, d}};
  return build_network(s);
}

}  // namespace

TEST_CASE("single pipe matrices against hand-built P1/P0 forms") {
  const int N = 4;
  const double L = 2.0, h = L / N;
  const AssembledSystem s = assemble(pipe(L), MeshParams::uniform(N));
  REQUIRE(s.n_p == N + 1);
  REQUIRE(s.n_m == N);
  CHECK(s.n_dirichlet == 1);
  CHECK(s.n_flux == 1);

  // dense oracle in natural node order 0..N along the pipe
  Eigen::MatrixXd M2 = Eigen::MatrixXd::Zero(N + 1, N + 1), K = Eigen::MatrixXd::Zero(N, N + 1);
  for (int i = 0; i < N; ++i) {
    M2(i, i) += h / 3, M2(i + 1, i + 1) += h / 3, M2(i, i + 1) += h / 6, M2(i + 1, i) += h / 6;
    K(i, i) = -1.0, K(i, i + 1) = 1.0;
  }
  Eigen::MatrixXd M2s = s.M2.to_dense(), Ks = s.K.to_dense();
  for (int i = 0; i <= N; ++i) {
    const int di = s.potential_dof(0, i);
    for (int j = 0; j <= N; ++j) CHECK(M2s(di, s.potential_dof(0, j)) == doctest::Approx(M2(i, j)));
    for (int k = 0; k < N; ++k) CHECK(Ks(s.flux_dof(0, k), di) == K(k, i));
  }
  CHECK((s.M1.to_dense() - h * Eigen::MatrixXd::Identity(N, N)).norm() < 1e-15);
  CHECK((s.Md.to_dense() - h * Eigen::MatrixXd::Identity(N, N)).norm() < 1e-15);
  CHECK(s.Ma.nonzeros() == 0);
  CHECK(s.B.coeff(0, s.potential_dof(0, 0)) == 1.0);
  CHECK(s.C.coeff(0, s.potential_dof(0, N)) == 1.0);
  CHECK(s.node_x(0, 3) == doctest::Approx(1.5));
}

TEST_CASE("variable coefficients are integrated exactly") {
  const int N = 5;
  // d = 1 + x^2, a = x
  const AssembledSystem s =
      assemble(pipe(1.0, PiecewisePolynomial({1.0, 0.0, 1.0}), PiecewisePolynomial({0.0, 1.0})), MeshParams::uniform(N));
  const double h = 0.2;
  for (int i = 0; i < N; ++i) {
    const double a = i * h, b = a + h;
    CHECK(s.Md.coeff(i, i) == doctest::Approx((b - a) + (b * b * b - a * a * a) / 3.0).epsilon(1e-14));
  }
  // entries of Ma sum to the integral of a
  Eigen::VectorXd one = Eigen::VectorXd::Ones(s.n_p);
  CHECK(one.dot(s.Ma * one) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(one.dot(s.M2 * one) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Gauss quadrature is exact for polynomials") {
  auto p = [](double x) { return 3 * std::pow(x, 19) - x * x + 1; };
  CHECK(integrate(p, -1.0, 2.0) == doctest::Approx(3 * (std::pow(2.0, 20) - 1) / 20.0 - 3.0 + 3.0).epsilon(1e-13));
  auto kink = [](double x) { return std::abs(x - 0.3); };
  CHECK(integrate(kink, 0.0, 1.0, {0.3}) == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("fig1 initial data is consistent") {
  const Scenario sc = builtin_scenario("fig1-network");
  const Problem pb = make_problem(sc);
  CHECK(pb.sys.n_p == 60);
  CHECK(pb.sys.n_m == 60);
  CHECK(pb.sys.B.rows() == 2);
  CHECK(pb.sys.C.rows() == 4);
  const ConsistencyReport rep =
      check_consistency(pb.sys, pb.p_init, pb.m_init, pb.loads.F(0.0), pb.loads.H(0.0), pb.loads.R(0.0));
  CHECK(rep.m_matches_m0);
  CHECK(rep.flux_residual < 1e-13);
  CHECK(rep.dirichlet_residual == 0.0);
  CHECK(rep.kirchhoff_residual < 1e-13);
  CHECK((consistent_initial_flux(pb.sys, pb.p_init, pb.loads.F(0.0)) - pb.m_init).norm() < 1e-13);
  // G carries -C^T r
  Eigen::VectorXd G = pb.loads.G(0.0);
  CHECK(G[sc.net.vertex_index("v2")] == 2.0);
  CHECK(G[sc.net.vertex_index("v5")] == -1.0);
}

TEST_CASE("Kirchhoff residual detects a wrong flux") {
  const Problem pb = make_problem(builtin_scenario("fig1-network"));
  Eigen::VectorXd m = pb.m_init;
  m[pb.sys.flux_dof(1, 0)] += 0.5;
  const ConsistencyReport rep =
      check_consistency(pb.sys, pb.p_init, m, pb.loads.F(0.0), pb.loads.H(0.0), pb.loads.R(0.0));
  CHECK_FALSE(rep.m_matches_m0);
  CHECK(rep.kirchhoff_residual == doctest::Approx(0.5));
}

TEST_CASE("load vectors") {
  Scenario sc = builtin_scenario("single-pipe");
  sc.data.f[0].terms.push_back({TimeProfile::sine(1.0, 2.0), PiecewisePolynomial({0.0, 1.0})});
  sc.data.g[0].terms.push_back({TimeProfile::constant(2.0), PiecewisePolynomial::constant(1.0)});
  sc.data.h[1] = TimeProfile::polynomial({0.0, 3.0});
  const AssembledSystem s = assemble(sc.net, MeshParams::uniform(4));
  const LoadEvaluator L(sc.net, s, sc.data);
  const double t = 0.4;
  for (int i = 0; i < 4; ++i) {
    const double mid = (i + 0.5) * 0.25;
    CHECK(L.F(t)[i] == doctest::Approx(std::sin(2 * t) * 0.25 * mid));
    CHECK(L.F_dot(t)[i] == doctest::Approx(2 * std::cos(2 * t) * 0.25 * mid));
  }
  CHECK(L.G(t).sum() == doctest::Approx(2.0));
  CHECK(L.H(t)[1] == doctest::Approx(1.2));
  CHECK(L.H_dot(t)[1] == doctest::Approx(3.0));
  CHECK(L.R(t).size() == 0);
}

TEST_CASE("data on the wrong vertex kind is rejected") {
  Scenario sc = builtin_scenario("fig1-network");
  sc.data.h[1] = TimeProfile::constant(1.0);
  const AssembledSystem s = assemble(sc.net, MeshParams::uniform(2));
  CHECK_THROWS_AS(LoadEvaluator(sc.net, s, sc.data), std::invalid_argument);
}

TEST_CASE("discontinuous initial potential is rejected") {
  const Network net = builtin_scenario("fig1-network").net;
  const AssembledSystem s = assemble(net, MeshParams::uniform(3));
  CHECK_THROWS_AS(interpolate_potential(net, s, [](int e, double) { return static_cast<double>(e); }),
                  std::invalid_argument);
  CHECK_NOTHROW(interpolate_potential(net, s, [](int, double) { return 2.0; }));
}

TEST_CASE("index 2 structure") {
  for (const char* name : {"fig1-network", "single-pipe"}) {
    const AssembledSystem s = assemble(builtin_scenario(name).net, MeshParams::uniform(6));
    const Index2Report rep = verify_index2(s, 1e-3);
    CHECK(rep.pass);
    CHECK(rep.rank_B == s.B.rows());
    CHECK(rep.sigma_min_BM2B > 0.0);
    CHECK(rep.sigma_min_step > 0.0);
    CHECK(rep.lambda_min_MdM1Md > 0.0);
  }
}

TEST_CASE("mesh parameters") {
  CHECK(MeshParams{{3, 4}}.elements_on(1) == 4);
  CHECK(MeshParams::uniform(5).elements_on(7) == 5);
  CHECK_THROWS_AS(MeshParams{{0}}.elements_on(0), std::invalid_argument);
  CHECK_THROWS_AS(MeshParams{}.elements_on(0), std::invalid_argument);
}
