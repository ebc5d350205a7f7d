#include "netpdae/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace netpdae {

using std::numbers::pi;

double split_index(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  return 1.0 / (2.0 * pi * std::sqrt(eps));
}

int integer_split_index(double eps) {
  double K = split_index(eps);
  double r = std::round(K);
  if (r < 1.0 || std::abs(K - r) > 1e-9 * K)
    throw std::invalid_argument("1/(2 pi sqrt(eps)) = " + std::to_string(K) + " is not a positive integer");
  return static_cast<int>(r);
}

double eps_for_split_index(int K) { return 1.0 / (4.0 * pi * pi * K * K); }

double series_initial_flux(double x, double alpha, int kmax) {
  double s = 0.0;
  for (int k = 1; k <= kmax; ++k) s += std::cos(pi * k * x) / (pi * std::pow(k, alpha));
  return s;
}

double series_initial_flux_integral(double a, double b, double alpha, int kmax) {
  double s = 0.0;
  for (int k = 1; k <= kmax; ++k)
    s += (std::sin(pi * k * b) - std::sin(pi * k * a)) / (pi * pi * std::pow(k, 1.0 + alpha));
  return s;
}

std::array<double, 3> pressure_mode(int k, double t, const SeriesParams& sp) {
  const double eps = sp.eps;
  const int K = integer_split_index(eps);
  const double amp = std::pow(k, 1.0 - sp.alpha);
  const double decay = 1.0 / (2.0 * eps);
  if (k < K) {
    const double s = std::sqrt(0.25 - eps * (pi * k) * (pi * k));
    const double sig = s / eps;
    // e^{-t/2eps} sinh(sig t) and e^{-t/2eps} cosh(sig t) without overflow
    const double ep = std::exp((sig - decay) * t), em = std::exp(-(sig + decay) * t);
    const double esh = 0.5 * (ep - em), ech = 0.5 * (ep + em);
    return {amp * esh / sig, amp * (ech - esh / (2.0 * s)),
            amp * (-ech / eps + esh * (1.0 / (4.0 * eps * eps * sig) + sig))};
  }
  const double e = std::exp(-decay * t);
  if (k == K) return {amp * t * e, amp * e * (1.0 - t * decay), amp * e * (-1.0 / eps + t / (4.0 * eps * eps))};
  const double s = std::sqrt(eps * (pi * k) * (pi * k) - 0.25);
  const double om = s / eps;
  const double sn = std::sin(om * t), cs = std::cos(om * t);
  return {amp * e * sn / om, amp * e * (cs - sn / (2.0 * s)),
          amp * e * (-cs / eps + sn * (1.0 / (4.0 * eps * eps * om) - om))};
}

double flux_mode(int k, double t, const SeriesParams& sp) {
  const double eps = sp.eps;
  const int K = integer_split_index(eps);
  const double decay = 1.0 / (2.0 * eps);
  if (k < K) {
    const double s = std::sqrt(0.25 - eps * (pi * k) * (pi * k));
    const double sig = s / eps;
    const double ep = std::exp((sig - decay) * t), em = std::exp(-(sig + decay) * t);
    return 0.5 * (ep + em) - 0.5 * (ep - em) / (2.0 * s);
  }
  const double e = std::exp(-decay * t);
  if (k == K) return e * (1.0 - t * decay);
  const double s = std::sqrt(eps * (pi * k) * (pi * k) - 0.25);
  return e * (std::cos(t * s / eps) - std::sin(t * s / eps) / (2.0 * s));
}

std::pair<double, double> series_solution_hyperbolic(double x, double t, const SeriesParams& sp) {
  const int K = integer_split_index(sp.eps);
  if (sp.kmax <= K) throw std::invalid_argument("kmax must exceed the split index K(eps)");
  double p = 0.0, m = 0.0;
  for (int k = 1; k <= sp.kmax; ++k) {
    p += pressure_mode(k, t, sp)[0] * std::sin(pi * k * x);
    m += flux_mode(k, t, sp) * std::cos(pi * k * x) / (pi * std::pow(k, sp.alpha));
  }
  return {p, m};
}

double series_pressure_norm2(double t, const SeriesParams& sp) {
  double s = 0.0;
  for (int k = 1; k <= sp.kmax; ++k) {
    double a = pressure_mode(k, t, sp)[0];
    s += 0.5 * a * a;
  }
  return s;
}

double sharpness_lower_bound(const SeriesParams& sp) {
  const double K = integer_split_index(sp.eps);
  const double hi = std::sqrt(1.0 + std::pow(5.0 * pi / 3.0, 2));
  const double lo = std::sqrt(1.0 + std::pow(pi / 3.0, 2));
  const double count = std::floor(hi - 1.0) - std::ceil(lo - 1.0);
  return sp.eps * K / (8.0 * std::exp(1.0) * pi * pi * std::pow(K, 2.0 * sp.alpha)) * count /
         std::pow(std::floor(hi), 2.0 * sp.alpha);
}

double energy_upper_bound(const SeriesParams& sp) {
  double s = 0.0;
  for (int k = 1; k <= sp.kmax; ++k) s += 1.0 / (2.0 * pi * pi * std::pow(k, 2.0 * sp.alpha));
  return sp.eps * s;
}

LimitSolution parabolic_limit_solution(LimitCase c, double x, double t, double alpha, int kmax) {
  LimitSolution sol;
  if (c == LimitCase::C1) return sol;
  double m_left = 0.0, m_right = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double a = std::exp(-pi * pi * k * k * t) / std::pow(k, 1.0 + alpha);
    sol.p0 += a * std::sin(pi * k * x);
    sol.m0 -= a * pi * k * std::cos(pi * k * x);
    m_left -= a * pi * k;
    m_right -= a * pi * k * std::cos(pi * k);
  }
  sol.lambda0 = {-m_left, m_right};
  return sol;
}

}  // namespace netpdae
