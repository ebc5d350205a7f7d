#include "netpdae/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netpdae {

TimeFunction::TimeFunction(Eigen::MatrixXd nodes, double t0, double dt, ReconstructionKind kind, int degree)
    : nodes_(std::move(nodes)), t0_(t0), dt_(dt), kind_(kind), degree_(degree) {
  if (nodes_.cols() < 2) throw std::invalid_argument("reconstruction needs at least two nodes");
  if (!(dt_ > 0.0)) throw std::invalid_argument("reconstruction needs a positive spacing");
  if (kind_ == ReconstructionKind::pw_constant) degree_ = 0;
  if (kind_ == ReconstructionKind::pw_linear) degree_ = 1;
  if (kind_ == ReconstructionKind::pw_polynomial) {
    if (degree_ < 0) throw std::invalid_argument("negative reconstruction degree");
    if (degree_ == 0) kind_ = ReconstructionKind::pw_constant;
  }
  if (degree_ + 1 > nodes_.cols()) throw std::invalid_argument("reconstruction degree too large for the grid");
}

int TimeFunction::stencil_start(int j) const {
  const int n = degree_;
  int start = (n % 2 == 1) ? j - (n + 1) / 2 : j - 1 - n / 2;
  return std::clamp(start, 0, static_cast<int>(nodes_.cols()) - 1 - n);
}

Eigen::VectorXd TimeFunction::operator()(double t) const {
  const int n_int = intervals();
  const double x = (t - t0_) / dt_;
  int j;
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9)
    j = static_cast<int>(r);
  else
    j = static_cast<int>(std::ceil(x));
  j = std::clamp(j, 1, n_int);
  if (kind_ == ReconstructionKind::pw_constant) {
    // value at the right end point, t0 itself maps to the first node
    return (std::abs(x) < 1e-9) ? Eigen::VectorXd(nodes_.col(0)) : Eigen::VectorXd(nodes_.col(j));
  }
  const int start = stencil_start(j);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(nodes_.rows());
  for (int a = start; a <= start + degree_; ++a) {
    double w = 1.0;
    for (int b = start; b <= start + degree_; ++b)
      if (b != a) w *= (x - b) / static_cast<double>(a - b);
    v += w * nodes_.col(a);
  }
  return v;
}

TimeFunction reconstruct(const Trajectory& traj, Field field, ReconstructionKind kind, int degree) {
  return TimeFunction(traj.at(field), traj.times.front(), traj.spacing(), kind, degree);
}

EpsCombination::EpsCombination(TimeFunction f0, TimeFunction f1, double eps)
    : f0_(std::move(f0)), f1_(std::move(f1)), eps_(eps) {
  if (f0_.intervals() != f1_.intervals() || std::abs(f0_.dt() - f1_.dt()) > 1e-14 * f0_.dt() ||
      std::abs(f0_.t0() - f1_.t0()) > 1e-14 || f0_.dim() != f1_.dim())
    throw std::invalid_argument("eps combination: grid mismatch");
}

EpsCombination eps_combination(TimeFunction f0, TimeFunction f1, double eps) {
  return EpsCombination(std::move(f0), std::move(f1), eps);
}

}  // namespace netpdae
