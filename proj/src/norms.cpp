#include "netpdae/norms.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace netpdae {

std::vector<double> node_midpoint_samples(double T, int n) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) s.push_back(k == 2 * n ? T : T * k / (2.0 * n));
  return s;
}

std::vector<double> log_samples_near_zero(double eps, double T) {
  std::vector<double> s;
  for (double t = eps / 4.0; t < T; t *= 2.0) s.push_back(t);
  return s;
}

double norm_C_L2(const VectorFunction& diff, const SparseMatrix& W, const std::vector<double>& samples) {
  double m = 0.0;
  for (double t : samples) {
    Vector v = diff(t);
    m = std::max(m, std::sqrt(std::max(0.0, v.dot(W * v))));
  }
  return m;
}

double norm_L2_time(const VectorFunction& diff, const SparseMatrix& W, double T, int n) {
  const double g = std::sqrt(3.0 / 5.0);
  const double nodes[3] = {-g, 0.0, g};
  const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double dt = T / n;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double mid = (j + 0.5) * dt;
    for (int q = 0; q < 3; ++q) {
      Vector v = diff(mid + 0.5 * dt * nodes[q]);
      sum += 0.5 * dt * weights[q] * v.dot(W * v);
    }
  }
  return std::sqrt(std::max(0.0, sum));
}

SparseMatrix h1_form(const AssembledSystem& sys) {
  Vector inv(sys.n_m);
  for (int i = 0; i < sys.n_m; ++i) inv[i] = 1.0 / sys.M1.coeff(i, i);
  SparseMatrix Kt = sys.K.transpose();
  return sys.M2 + Kt * (SparseMatrix::diagonal(inv) * sys.K);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("power law fit needs at least two points");
  const auto n = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto [x, e] = pairs[static_cast<std::size_t>(i)];
    if (!(x > 0.0) || !(e > 0.0)) throw std::invalid_argument("power law fit needs positive data");
    A(i, 0) = std::log(x);
    A(i, 1) = 1.0;
    y[i] = std::log(e);
  }
  Eigen::Vector2d sol = A.colPivHouseholderQr().solve(y);
  PowerLawFit fit;
  fit.alpha = sol[0];
  fit.C = std::exp(sol[1]);
  fit.residual = (A * sol - y).norm();
  return fit;
}

}  // namespace netpdae
