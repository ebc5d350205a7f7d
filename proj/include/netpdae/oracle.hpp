#pragma once

#include <array>
#include <utility>

namespace netpdae {

// Closed-form solutions on the unit pipe with d = 1, a = 0 and homogeneous
// Dirichlet data for p.

struct SeriesParams {
  double alpha = 0.55;
  double eps = 0.0;
  int kmax = 1000;
};

// 1 / (2 pi sqrt(eps))
double split_index(double eps);
// throws unless split_index(eps) is a positive integer
int integer_split_index(double eps);
// eps with split_index(eps) = K
double eps_for_split_index(int K);

// sum_{k=1}^{kmax} cos(pi k x) / (pi k^alpha)
double series_initial_flux(double x, double alpha, int kmax);
// integral of series_initial_flux over [a, b]
double series_initial_flux_integral(double a, double b, double alpha, int kmax);

// Amplitude P_k(t) of sin(pi k x) in p and its first two time derivatives.
std::array<double, 3> pressure_mode(int k, double t, const SeriesParams& sp);
// Amplitude of cos(pi k x) / (pi k^alpha) in m.
double flux_mode(int k, double t, const SeriesParams& sp);

// (p, m) at (x, t); needs integer split index and kmax > K(eps)
std::pair<double, double> series_solution_hyperbolic(double x, double t, const SeriesParams& sp);

// squared L2(0,1) norm of p(., t): sum_k P_k(t)^2 / 2
double series_pressure_norm2(double t, const SeriesParams& sp);

// Bounds on the squared C(0,T;L2) norm of p for zero initial pressure.
double sharpness_lower_bound(const SeriesParams& sp);
double energy_upper_bound(const SeriesParams& sp);

enum class LimitCase { C1, C2 };

struct LimitSolution {
  double p0 = 0.0, m0 = 0.0;
  std::array<double, 2> lambda0{0.0, 0.0};
};

// C1: zero pressure, cosine-series flux; C2: p(x,0) = sum sin(pi k x)/k^(1+alpha), m(x,0) = 0
LimitSolution parabolic_limit_solution(LimitCase c, double x, double t, double alpha, int kmax);

}  // namespace netpdae
