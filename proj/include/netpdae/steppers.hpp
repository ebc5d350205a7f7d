#pragma once

#include "netpdae/assembly.hpp"
#include "netpdae/butcher.hpp"

#include <Eigen/Core>

#include <functional>
#include <map>
#include <string>

namespace netpdae {

struct TimeGrid {
  double T = 1.0;
  int n = 1;

  TimeGrid() = default;
  TimeGrid(double T_, int n_);
  double tau() const { return T / n; }
  double t(int j) const { return j == n ? T : j * tau(); }
};

enum class Field { p0, m0, p1, m1, p, m, lambda, mu, lambda1 };
std::string field_name(Field f);

struct Trajectory {
  std::string scheme;
  TimeGrid grid;
  int stride = 1;  // every stride-th node is stored
  std::vector<double> times;
  std::map<Field, Eigen::MatrixXd> data;  // column k holds stored node k
  // max over all nodes of the constraint residuals
  double max_constraint_residual = 0.0;

  bool has(Field f) const { return data.count(f) > 0; }
  const Eigen::MatrixXd& at(Field f) const;
  int stored() const { return static_cast<int>(times.size()); }
  double spacing() const { return grid.tau() * stride; }
};

struct SolveOptions {
  int stride = 1;
};

// E y' + J y = rhs(t)
struct DaeForm {
  SparseMatrix E, J;
  std::function<Vector(double)> rhs;
  std::vector<std::pair<Field, int>> layout;  // consecutive blocks of the state vector
  int size() const { return J.rows(); }
};

// Called after every step with (j, y_{j-1}, y_j).
using StepObserver = std::function<void(int, const Vector&, const Vector&)>;

Eigen::MatrixXd integrate_euler(const DaeForm& form, const Vector& y0, const TimeGrid& grid, int stride,
                                const StepObserver& observe = {});
Eigen::MatrixXd integrate_rk(const DaeForm& form, const Vector& y0, const TimeGrid& grid, const ButcherTableau& tab,
                             int stride, const StepObserver& observe = {});

DaeForm parabolic_form(const AssembledSystem& sys, const LoadEvaluator& loads);
DaeForm coupled_form(const AssembledSystem& sys, const LoadEvaluator& loads);
DaeForm hyperbolic_form(const AssembledSystem& sys, const LoadEvaluator& loads, double eps);

Trajectory solve_parabolic_euler(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                                 const TimeGrid& grid, const SolveOptions& opts = {});
Trajectory solve_parabolic_rk(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                              const TimeGrid& grid, const ButcherTableau& tab, const SolveOptions& opts = {});
Trajectory solve_coupled_euler(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                               const TimeGrid& grid, const SolveOptions& opts = {});
Trajectory solve_coupled_rk(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                            const TimeGrid& grid, const ButcherTableau& tab, const SolveOptions& opts = {});
Trajectory solve_hyperbolic_reference(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p_init,
                                      const Vector& m_init, const TimeGrid& grid, const ButcherTableau& tab, double eps,
                                      const SolveOptions& opts = {});

double hamiltonian(const AssembledSystem& sys, const Vector& p_vec, const Vector& m_vec, double eps);

}  // namespace netpdae
