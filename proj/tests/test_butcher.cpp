#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netpdae/butcher.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace netpdae;

TEST_CASE("radau-iia-2 is order (3, 2), algebraically stable and stiffly accurate") {
  const ButcherTableau t = tableau("radau-iia-2");
  CHECK(t.stages() == 2);
  CHECK(t.order() == 3);
  CHECK(t.stage_order() == 2);
  CHECK(check_order_conditions(t, 3, 2));
  CHECK_FALSE(check_order_conditions(t, 4, 2));
  CHECK_FALSE(check_order_conditions(t, 3, 3));
  CHECK(check_algebraic_stability(t).psd);
  CHECK(t.weights().sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.A()(1, 0) == doctest::Approx(0.75));
  CHECK(t.c()(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("radau-iia-3 is order (5, 3)") {
  const ButcherTableau t = tableau("radau3");
  CHECK(t.stages() == 3);
  CHECK(check_order_conditions(t, 5, 3));
  CHECK_FALSE(check_order_conditions(t, 6, 3));
  CHECK(check_algebraic_stability(t).psd);
  CHECK(t.weights().sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(t.c()(2) == 1.0);
}

TEST_CASE("implicit Euler fails the order 2 condition") {
  const ButcherTableau t = tableau("implicit-euler");
  CHECK(check_order_conditions(t, 1, 1));
  CHECK_FALSE(check_order_conditions(t, 2, 1));
  CHECK(check_algebraic_stability(t).psd);
  CHECK(t.weights()(0) == 1.0);
}

TEST_CASE("stability functions") {
  const ButcherTableau e = tableau("euler"), r2 = tableau("radau2"), r3 = tableau("radau3");
  for (double z : {-0.5, -3.0, 2.0}) CHECK(std::abs(stability_function(e, z) - 1.0 / (1.0 - z)) < 1e-14);
  // (1 + z/3) / (1 - 2z/3 + z^2/6)
  const std::complex<double> z(-1.0, 2.0);
  CHECK(std::abs(stability_function(r2, z) - (1.0 + z / 3.0) / (1.0 - 2.0 * z / 3.0 + z * z / 6.0)) < 1e-14);
  CHECK(std::abs(stability_function(r2, -1e8)) < 1e-7);
  CHECK(std::abs(stability_function(r3, -1e8)) < 1e-7);
  for (double y : {0.1, 1.0, 10.0}) CHECK(std::abs(stability_function(r3, {0.0, y})) <= 1.0 + 1e-12);
}

TEST_CASE("invalid tableaux are rejected") {
  Eigen::MatrixXd A(2, 2);
  A << 0, 0, 0.5, 0.5;
  Eigen::VectorXd b(2), c(2);
  b << 0.5, 0.5;
  c << 0, 1;
  CHECK_THROWS_AS(ButcherTableau("trapezoid", A, b, c, 2, 2), std::invalid_argument);

  // Gauss-Legendre 1 stage: not stiffly accurate
  CHECK_THROWS_AS(ButcherTableau("midpoint", Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::VectorXd::Ones(1),
                                 Eigen::VectorXd::Constant(1, 0.5), 2, 1),
                  std::invalid_argument);

  // radau-iia-2 coefficients with a claimed order that fails
  const ButcherTableau r = tableau("radau2");
  CHECK_THROWS_AS(ButcherTableau("bad", r.A(), r.b(), r.c(), 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(ButcherTableau("bad", r.A(), r.b(), r.c(), 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(tableau("rk4"), std::invalid_argument);

  Eigen::MatrixXd An(2, 2);
  An << 1, 0, -1, 1;
  Eigen::VectorXd bn(2);
  bn << 2, -1;
  CHECK_FALSE(check_algebraic_stability(An, bn).psd);
}
