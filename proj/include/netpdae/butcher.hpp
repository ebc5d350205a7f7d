#pragma once

#include <Eigen/Core>

#include <complex>
#include <string>

namespace netpdae {

struct StabilityCheck {
  bool psd = false;
  double min_eig = 0.0;
};

class ButcherTableau {
public:
  // Validates A invertible, b^T A^-1 1 = 1, algebraic stability and the
  // order conditions for (p, q); throws std::invalid_argument otherwise.
  ButcherTableau(std::string name, Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c, int p, int q);

  const std::string& name() const { return name_; }
  int stages() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Eigen::VectorXd& c() const { return c_; }
  int order() const { return p_; }
  int stage_order() const { return q_; }

  const Eigen::MatrixXd& A_inv() const { return Ainv_; }
  // b^T A^-1
  const Eigen::RowVectorXd& weights() const { return w_; }

private:
  std::string name_;
  Eigen::MatrixXd A_, Ainv_;
  Eigen::VectorXd b_, c_;
  Eigen::RowVectorXd w_;
  int p_, q_;
};

// implicit-euler, radau-iia-2, radau-iia-3
ButcherTableau tableau(const std::string& name);

bool check_order_conditions(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, int p,
                            int q);
inline bool check_order_conditions(const ButcherTableau& t, int p, int q) {
  return check_order_conditions(t.A(), t.b(), t.c(), p, q);
}

StabilityCheck check_algebraic_stability(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);
inline StabilityCheck check_algebraic_stability(const ButcherTableau& t) { return check_algebraic_stability(t.A(), t.b()); }

// R(z) = 1 + z b^T (I - z A)^-1 1
std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z);

}  // namespace netpdae
