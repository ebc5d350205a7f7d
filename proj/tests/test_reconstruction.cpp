#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netpdae/reconstruction.hpp"

#include <cmath>

using namespace netpdae;

namespace {

// two components: a polynomial of the given degree and a constant
Eigen::MatrixXd sample(int degree, int n, double t0, double dt) {
  Eigen::MatrixXd m(2, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = t0 + k * dt;
    m(0, k) = std::pow(t - 0.3, degree) + 2.0 * t;
    m(1, k) = -1.5;
  }
  return m;
}

}  // namespace

TEST_CASE("polynomials of the reconstruction degree are reproduced") {
  const double t0 = 0.5, dt = 0.125;
  const int n = 8;
  for (int q : {1, 2, 3}) {
    const TimeFunction f(sample(q, n, t0, dt), t0, dt, ReconstructionKind::pw_polynomial, q);
    for (double t = t0; t <= t0 + n * dt + 1e-12; t += dt / 7.0) {
      const Eigen::VectorXd v = f(t);
      CHECK(v[0] == doctest::Approx(std::pow(t - 0.3, q) + 2.0 * t).epsilon(1e-12));
      CHECK(v[1] == doctest::Approx(-1.5));
    }
  }
}

TEST_CASE("nodes are interpolated exactly") {
  const Eigen::MatrixXd nodes = Eigen::MatrixXd::Random(3, 6);
  for (auto kind : {ReconstructionKind::pw_constant, ReconstructionKind::pw_linear, ReconstructionKind::pw_polynomial}) {
    const TimeFunction f(nodes, 0.0, 0.2, kind, 2);
    for (int k = 0; k < 6; ++k) CHECK((f(0.2 * k) - nodes.col(k)).norm() < 1e-14);
  }
}

TEST_CASE("piecewise constant takes the right end point") {
  Eigen::MatrixXd nodes(1, 3);
  nodes << 1.0, 2.0, 4.0;
  const TimeFunction f(nodes, 0.0, 1.0, ReconstructionKind::pw_constant);
  CHECK(f(0.0)[0] == 1.0);
  CHECK(f(0.3)[0] == 2.0);
  CHECK(f(1.0)[0] == 2.0);
  CHECK(f(1.0 + 1e-12)[0] == 2.0);
  CHECK(f(1.5)[0] == 4.0);
  const TimeFunction z(nodes, 0.0, 1.0, ReconstructionKind::pw_polynomial, 0);
  CHECK(z.kind() == ReconstructionKind::pw_constant);
  const TimeFunction l(nodes, 0.0, 1.0, ReconstructionKind::pw_linear);
  CHECK(l(1.5)[0] == doctest::Approx(3.0));
}

TEST_CASE("stencils are centred and clamped") {
  const TimeFunction q2(Eigen::MatrixXd::Zero(1, 11), 0.0, 0.1, ReconstructionKind::pw_polynomial, 2);
  CHECK(q2.stencil_start(1) == 0);
  CHECK(q2.stencil_start(5) == 3);
  CHECK(q2.stencil_start(10) == 8);
  const TimeFunction q3(Eigen::MatrixXd::Zero(1, 11), 0.0, 0.1, ReconstructionKind::pw_polynomial, 3);
  CHECK(q3.stencil_start(1) == 0);
  CHECK(q3.stencil_start(5) == 3);
  CHECK(q3.stencil_start(10) == 7);
  const TimeFunction q1(Eigen::MatrixXd::Zero(1, 11), 0.0, 0.1, ReconstructionKind::pw_linear);
  CHECK(q1.stencil_start(4) == 3);
}

TEST_CASE("invalid reconstructions") {
  CHECK_THROWS_AS(TimeFunction(Eigen::MatrixXd::Zero(1, 1), 0.0, 0.1, ReconstructionKind::pw_linear),
                  std::invalid_argument);
  CHECK_THROWS_AS(TimeFunction(Eigen::MatrixXd::Zero(1, 3), 0.0, 0.1, ReconstructionKind::pw_polynomial, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(TimeFunction(Eigen::MatrixXd::Zero(1, 3), 0.0, 0.0, ReconstructionKind::pw_linear),
                  std::invalid_argument);
}

TEST_CASE("eps combination") {
  const TimeFunction a(sample(1, 4, 0.0, 0.25), 0.0, 0.25, ReconstructionKind::pw_linear);
  const TimeFunction b(sample(2, 4, 0.0, 0.25), 0.0, 0.25, ReconstructionKind::pw_polynomial, 2);
  const EpsCombination c = eps_combination(a, b, 0.01);
  CHECK((c(0.4) - (a(0.4) + 0.01 * b(0.4))).norm() < 1e-15);
  const TimeFunction other(sample(1, 8, 0.0, 0.125), 0.0, 0.125, ReconstructionKind::pw_linear);
  CHECK_THROWS_AS(eps_combination(a, other, 0.1), std::invalid_argument);
}
