#pragma once

#include "netpdae/config.hpp"
#include "netpdae/norms.hpp"
#include "netpdae/steppers.hpp"

#include <string>
#include <vector>

namespace netpdae {

// 0.2 * 2^-k, k = 0..halvings
std::vector<double> halving_sequence(double tau0, int halvings);
// 1 / (8 sqrt(2^i)), i = 1..16
std::vector<double> eps_grid();

// Pressure approximation of one solver run.
// order "1": p0, order "2": p0 + eps p1, order "hyperbolic": p.
struct PressureRun {
  VectorFunction pressure;
  Trajectory traj;
};

PressureRun run_pressure(const Problem& pb, const std::string& scheme, const std::string& order,
                         const TimeGrid& grid, double eps, const SolveOptions& opts = {});

// Copy of sc with the reaction coefficient a set to the constant value on every edge.
Scenario with_reaction(const Scenario& sc, double a);

// --- tau convergence ---

struct ConvTauConfig {
  Scenario scenario = builtin_scenario("fig1-network");
  std::vector<double> taus = halving_sequence(0.2, 13);
  int ref_refine = 32;  // tau_ref = min(taus) / ref_refine, must be even
  bool check_reference = true;
};

struct ConvTauRow {
  double tau = 0.0;
  double err_p0_euler = 0.0, err_phat_euler = 0.0, err_p0_radau = 0.0, err_phat_radau = 0.0;
};

struct ConvTauResult {
  std::vector<ConvTauRow> rows;
  double tau_ref = 0.0;
  double reference_diff = 0.0;           // C(0,T;M2) distance between the tau_ref and 2 tau_ref references
  double max_constraint_residual = 0.0;  // over every run
};

ConvTauResult run_convergence_tau(const ConvTauConfig& cfg);

// --- eps exponent on the unit pipe ---

// Semi-discrete unit pipe with d = 1, a = 0, zero Dirichlet data and p(0) = 0,
// solved exactly in time mode by mode.
class ModalPipe {
public:
  ModalPipe(int elements, const Vector& m_init);

  int elements() const { return n_; }
  // interior potential dofs
  Eigen::VectorXd pressure(double t, double eps) const;
  double pressure_norm(double t, double eps) const;
  // max over [0, T] of pressure_norm
  double c_norm(double eps, double T) const;

  const Eigen::VectorXd& frequencies() const { return s_; }

private:
  int n_;
  Eigen::MatrixXd V_;   // M2-orthonormal eigenvectors
  Eigen::VectorXd s_;   // sqrt of the eigenvalues
  Eigen::VectorXd b0_;  // initial flux coordinates
  Eigen::VectorXd amplitude(double t, double eps) const;
};

// P0 projection of the cosine-series flux on a uniform mesh of the unit interval
Vector cosine_series_flux(int elements, double alpha, int kmax);

struct ConvEpsConfig {
  std::vector<int> meshes{6, 11, 21, 41, 81, 161, 321, 641, 1281};
  std::vector<double> eps = eps_grid();
  double T = 1.0;
  double alpha = 0.55;
  int k_trunc = 0;  // 0: 10 * max mesh
};

struct ConvEpsRow {
  int elements = 0;
  double h = 0.0;
  PowerLawFit fit;
  std::vector<double> errors;  // one per eps
};

std::vector<ConvEpsRow> run_convergence_eps(const ConvEpsConfig& cfg);

// --- eps order ---

struct EpsOrderConfig {
  Scenario scenario = builtin_scenario("fig1-network");
  std::vector<double> eps{1e-2, 1e-3, 1e-4};
  std::string scheme = "radau2";
  double tau = 0.2 / 1024.0;
  int ref_refine = 64;  // tau_ref = tau / ref_refine, must be divisible by 4
};

struct EpsOrderRow {
  double eps = 0.0;
  double err_p0 = 0.0, err_phat = 0.0;
  double err_p0_half = 0.0, err_phat_half = 0.0;  // with tau / 2
};

struct EpsOrderResult {
  std::vector<EpsOrderRow> rows;
  PowerLawFit fit_p0, fit_phat;
  bool fit_ok = false;
  std::string fit_message;
  double max_time_change = 0.0;  // max relative change under tau halving
  double max_constraint_residual = 0.0;
};

EpsOrderResult run_eps_order_study(const EpsOrderConfig& cfg);

// --- output ---

void write_conv_tau_csv(const ConvTauResult& r, const std::string& path);
void write_conv_eps_csv(const std::vector<ConvEpsRow>& rows, const std::vector<double>& eps, const std::string& path);
void write_eps_order_csv(const EpsOrderResult& r, const std::string& path);
// kind: "conv-tau", "conv-eps" or "eps-order"
void write_plot_script(const std::string& kind, const std::string& csv_path, const std::string& script_path);

}  // namespace netpdae
