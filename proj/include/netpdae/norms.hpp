#pragma once

#include "netpdae/assembly.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace netpdae {

using VectorFunction = std::function<Vector(double)>;

// nodes t_j = j T / n plus interval midpoints
std::vector<double> node_midpoint_samples(double T, int n);
// eps * 2^k for k = -2, -1, 0, 1, ... while below T
std::vector<double> log_samples_near_zero(double eps, double T);

// max over samples of sqrt(v^T W v)
double norm_C_L2(const VectorFunction& diff, const SparseMatrix& W, const std::vector<double>& samples);

// (int_0^T v^T W v dt)^(1/2), three Gauss points per interval of a uniform partition into n intervals
double norm_L2_time(const VectorFunction& diff, const SparseMatrix& W, double T, int n);

// M2 + K^T M1^-1 K
SparseMatrix h1_form(const AssembledSystem& sys);

struct PowerLawFit {
  double alpha = 0.0;
  double C = 0.0;
  double residual = 0.0;  // Euclidean norm of the log-log residual
};

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& pairs);

}  // namespace netpdae
