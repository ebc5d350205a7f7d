#include "netpdae/butcher.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace netpdae {

bool check_order_conditions(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, int p,
                            int q) {
  const double tol = 1e-12;
  for (int k = 1; k <= p; ++k) {
    double s = 0.0;
    for (int j = 0; j < b.size(); ++j) s += b[j] * std::pow(c[j], k - 1);
    if (std::abs(s - 1.0 / k) > tol) return false;
  }
  for (int k = 1; k <= q; ++k)
    for (int i = 0; i < A.rows(); ++i) {
      double s = 0.0;
      for (int j = 0; j < A.cols(); ++j) s += A(i, j) * std::pow(c[j], k - 1);
      if (std::abs(s - std::pow(c[i], k) / k) > tol) return false;
    }
  return true;
}

StabilityCheck check_algebraic_stability(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::MatrixXd M = b.asDiagonal() * A + A.transpose() * b.asDiagonal() - b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  StabilityCheck r;
  r.min_eig = es.eigenvalues().minCoeff();
  r.psd = r.min_eig >= -1e-12 && (b.array() >= 0.0).all();
  return r;
}

ButcherTableau::ButcherTableau(std::string name, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c, int p,
                               int q)
    : name_(std::move(name)), A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), p_(p), q_(q) {
  const auto s = b_.size();
  if (s == 0 || A_.rows() != s || A_.cols() != s || c_.size() != s)
    throw std::invalid_argument("tableau '" + name_ + "': inconsistent sizes");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A_);
  if (!lu.isInvertible()) throw std::invalid_argument("tableau '" + name_ + "': A is singular");
  Ainv_ = lu.inverse();
  w_ = b_.transpose() * Ainv_;
  if (std::abs(w_.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("tableau '" + name_ + "': b^T A^-1 1 != 1");
  if (!check_algebraic_stability(A_, b_).psd)
    throw std::invalid_argument("tableau '" + name_ + "': not algebraically stable");
  if (s > 1 && p_ < q_ + 1) throw std::invalid_argument("tableau '" + name_ + "': need p >= q + 1");
  if (!check_order_conditions(A_, b_, c_, p_, q_))
    throw std::invalid_argument("tableau '" + name_ + "': order conditions fail");
}

ButcherTableau tableau(const std::string& name) {
  if (name == "implicit-euler" || name == "euler") {
    return ButcherTableau("implicit-euler", Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Constant(1, 1.0),
                          Eigen::VectorXd::Constant(1, 1.0), 1, 1);
  }
  if (name == "radau-iia-2" || name == "radau2") {
    Eigen::MatrixXd A(2, 2);
    A << 5.0 / 12.0, -1.0 / 12.0, 3.0 / 4.0, 1.0 / 4.0;
    Eigen::VectorXd b(2), c(2);
    b << 3.0 / 4.0, 1.0 / 4.0;
    c << 1.0 / 3.0, 1.0;
    return ButcherTableau("radau-iia-2", A, b, c, 3, 2);
  }
  if (name == "radau-iia-3" || name == "radau3") {
    const double r6 = std::sqrt(6.0);
    Eigen::MatrixXd A(3, 3);
    A << (88.0 - 7.0 * r6) / 360.0, (296.0 - 169.0 * r6) / 1800.0, (-2.0 + 3.0 * r6) / 225.0,
        (296.0 + 169.0 * r6) / 1800.0, (88.0 + 7.0 * r6) / 360.0, (-2.0 - 3.0 * r6) / 225.0,
        (16.0 - r6) / 36.0, (16.0 + r6) / 36.0, 1.0 / 9.0;
    Eigen::VectorXd b(3), c(3);
    b << (16.0 - r6) / 36.0, (16.0 + r6) / 36.0, 1.0 / 9.0;
    c << (4.0 - r6) / 10.0, (4.0 + r6) / 10.0, 1.0;
    return ButcherTableau("radau-iia-3", A, b, c, 5, 3);
  }
  throw std::invalid_argument("unknown tableau '" + name + "'");
}

std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z) {
  const auto s = t.stages();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(s, s) - z * t.A().cast<std::complex<double>>();
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(s);
  Eigen::VectorXcd y = M.partialPivLu().solve(one);
  return 1.0 + z * (t.b().cast<std::complex<double>>().transpose() * y)(0);
}

}  // namespace netpdae
