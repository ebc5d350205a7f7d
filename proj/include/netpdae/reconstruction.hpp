#pragma once

#include "netpdae/steppers.hpp"

#include <Eigen/Core>

namespace netpdae {

enum class ReconstructionKind { pw_constant, pw_linear, pw_polynomial };

// Vector-valued function of time built from node data on a uniform grid
// t_k = t0 + k * dt, k = 0..n.
class TimeFunction {
public:
  TimeFunction(Eigen::MatrixXd nodes, double t0, double dt, ReconstructionKind kind, int degree = 1);

  Eigen::VectorXd operator()(double t) const;

  ReconstructionKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int intervals() const { return static_cast<int>(nodes_.cols()) - 1; }
  int dim() const { return static_cast<int>(nodes_.rows()); }
  double t0() const { return t0_; }
  double dt() const { return dt_; }
  double t_end() const { return t0_ + dt_ * intervals(); }
  const Eigen::MatrixXd& nodes() const { return nodes_; }

  // first node index of the interpolation stencil on interval (t_{j-1}, t_j], j = 1..n
  int stencil_start(int j) const;

private:
  Eigen::MatrixXd nodes_;
  double t0_, dt_;
  ReconstructionKind kind_;
  int degree_;
};

TimeFunction reconstruct(const Trajectory& traj, Field field, ReconstructionKind kind, int degree = 1);

// f0 + eps * f1, evaluated pointwise
class EpsCombination {
public:
  EpsCombination(TimeFunction f0, TimeFunction f1, double eps);
  Eigen::VectorXd operator()(double t) const { return f0_(t) + eps_ * f1_(t); }
  const TimeFunction& f0() const { return f0_; }

private:
  TimeFunction f0_, f1_;
  double eps_;
};

EpsCombination eps_combination(TimeFunction f0, TimeFunction f1, double eps);

}  // namespace netpdae
