#include "netpdae/experiments.hpp"
#include "netpdae/oracle.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>

using namespace netpdae;

namespace {

void apply_mesh(Scenario& sc, int elements) {
  if (elements > 0) sc.solver.elements_per_edge = {elements};
}

int cmd_assemble(const std::string& config, const std::string& dir, int elements) {
  Scenario sc = load_scenario(config);
  apply_mesh(sc, elements);
  const AssembledSystem sys = assemble(sc.net, MeshParams{sc.solver.elements_per_edge});
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const SparseMatrix*> mats[] = {{"M1", &sys.M1}, {"M2", &sys.M2}, {"Md", &sys.Md},
                                                              {"Ma", &sys.Ma}, {"K", &sys.K},   {"B", &sys.B},
                                                              {"C", &sys.C}};
  for (auto [name, m] : mats) write_matrix_market(*m, (std::filesystem::path(dir) / (std::string(name) + ".mtx")).string());
  std::cout << "n_p " << sys.n_p << " n_m " << sys.n_m << " dirichlet " << sys.n_dirichlet << " flux " << sys.n_flux
            << "\n";
  const Index2Report idx = verify_index2(sys, sc.solver.eps);
  std::cout << "index-2 check: " << (idx.pass ? "pass" : "fail") << " " << idx.message << "\n";
  return 0;
}

int cmd_solve(const std::string& config, const std::string& scheme, const std::string& order, double tau,
              double eps_opt, int elements, const std::string& out_path) {
  Scenario sc = load_scenario(config);
  apply_mesh(sc, elements);
  const double eps = std::isnan(eps_opt) ? sc.solver.eps : eps_opt;
  sc.solver.eps = eps;
  const Problem pb = make_problem(sc);
  const double n = sc.solver.T / tau;
  if (std::abs(n - std::round(n)) > 1e-9 * n) throw std::invalid_argument("T / tau must be an integer");
  PressureRun run = run_pressure(pb, scheme, order, TimeGrid(sc.solver.T, static_cast<int>(std::round(n))), eps);
  const Trajectory& tr = run.traj;
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << std::setprecision(15) << "t";
  for (const auto& [f, mat] : tr.data)
    for (Eigen::Index i = 0; i < mat.rows(); ++i) out << ',' << field_name(f) << '_' << i;
  out << '\n';
  for (int k = 0; k < tr.stored(); ++k) {
    out << tr.times[static_cast<std::size_t>(k)];
    for (const auto& [f, mat] : tr.data)
      for (Eigen::Index i = 0; i < mat.rows(); ++i) out << ',' << mat(i, k);
    out << '\n';
  }
  std::cout << "steps " << tr.grid.n << " max constraint residual " << tr.max_constraint_residual << "\n";
  return 0;
}

int cmd_oracle(double eps, double alpha, int kmax, int nx, int nt, const std::string& out_path) {
  SeriesParams sp{alpha, eps, kmax};
  const int K = integer_split_index(eps);
  double residual = 0.0;
  const double T = 1.0;
  for (int j = 0; j <= nt; ++j) {
    const double t = T * j / nt;
    for (int k = 1; k <= kmax; ++k) {
      auto [P, dP, ddP] = pressure_mode(k, t, sp);
      const double w = std::numbers::pi * k;
      const double scale = std::abs(dP) + w * w * std::abs(P) + eps * std::abs(ddP);
      // amplitudes in the subnormal range carry no relative precision
      if (scale > 1e-200) residual = std::max(residual, std::abs(eps * ddP + dP + w * w * P) / scale);
    }
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << std::setprecision(15) << "t,x,p,m\n";
  for (int j = 0; j <= nt; ++j) {
    const double t = T * j / nt;
    for (int i = 0; i <= nx; ++i) {
      const double x = static_cast<double>(i) / nx;
      auto [p, m] = series_solution_hyperbolic(x, t, sp);
      out << t << ',' << x << ',' << p << ',' << m << '\n';
    }
  }
  std::cout << "K " << K << " max relative modal residual " << residual << "\n"
            << "lower bound " << sharpness_lower_bound(sp) << " upper bound " << energy_upper_bound(sp) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped linear wave systems on networks"};
  app.require_subcommand(1);

  std::string config = "fig1-network", dir, out, plot, scheme = "radau2", order = "1";
  double tau = 0.0, eps = std::nan(""), alpha = 0.55, reaction = std::nan("");
  int elements = 0, kmax = 1000, nx = 20, nt = 20, ref_refine = 32;

  auto* as = app.add_subcommand("assemble", "assemble and dump the matrices");
  as->add_option("--config", config, "scenario name or JSON file")->required();
  as->add_option("--dump-matrices", dir, "output directory")->required();
  as->add_option("--elements-per-edge", elements);

  auto* so = app.add_subcommand("solve", "run one solver and write the trajectory");
  so->add_option("--config", config)->required();
  so->add_option("--scheme", scheme)->check(CLI::IsMember({"euler", "radau2", "radau3"}));
  so->add_option("--order", order)->check(CLI::IsMember({"1", "2", "hyperbolic"}));
  so->add_option("--tau", tau)->required();
  so->add_option("--eps", eps);
  so->add_option("--elements-per-edge", elements);
  so->add_option("--out", out)->required();

  auto* oc = app.add_subcommand("oracle-check", "evaluate the series solution on the unit pipe");
  oc->add_option("--eps", eps)->required();
  oc->add_option("--alpha", alpha);
  oc->add_option("--kmax", kmax);
  oc->add_option("--nx", nx);
  oc->add_option("--nt", nt);
  oc->add_option("--out", out)->default_val("oracle.csv");

  auto* ct = app.add_subcommand("conv-tau", "time step convergence against the hyperbolic reference");
  ct->add_option("--config", config);
  ct->add_option("--out", out)->required();
  ct->add_option("--plot-script", plot);
  ct->add_option("--elements-per-edge", elements);
  ct->add_option("--ref-refine", ref_refine);
  ct->add_option("--reaction", reaction, "override a on every edge");

  auto* ce = app.add_subcommand("conv-eps", "exponent of the eps error on the unit pipe");
  ce->add_option("--out", out)->required();
  ce->add_option("--plot-script", plot);

  auto* eo = app.add_subcommand("eps-order", "error of p0 and p0 + eps p1 against eps");
  eo->add_option("--config", config);
  eo->add_option("--out", out)->required();
  eo->add_option("--plot-script", plot);
  eo->add_option("--elements-per-edge", elements);
  eo->add_option("--reaction", reaction, "override a on every edge");

  auto* cf = app.add_subcommand("config", "print a scenario as JSON");
  cf->add_option("--config", config);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*as) return cmd_assemble(config, dir, elements);
    if (*so) return cmd_solve(config, scheme, order, tau, eps, elements, out);
    if (*oc) return cmd_oracle(eps, alpha, kmax, nx, nt, out);
    if (*cf) {
      std::cout << scenario_to_json(load_scenario(config)) << "\n";
      return 0;
    }
    auto scenario = [&] {
      Scenario sc = load_scenario(config);
      apply_mesh(sc, elements);
      return std::isnan(reaction) ? sc : with_reaction(sc, reaction);
    };
    if (*ct) {
      ConvTauConfig cfg;
      cfg.scenario = scenario();
      cfg.ref_refine = ref_refine;
      ConvTauResult r = run_convergence_tau(cfg);
      write_conv_tau_csv(r, out);
      std::cout << "tau_ref " << r.tau_ref << " reference diff " << r.reference_diff << " max constraint residual "
                << r.max_constraint_residual << "\n";
      if (!plot.empty()) write_plot_script("conv-tau", out, plot);
      return 0;
    }
    if (*ce) {
      ConvEpsConfig cfg;
      auto rows = run_convergence_eps(cfg);
      write_conv_eps_csv(rows, cfg.eps, out);
      for (const auto& r : rows) std::printf("N %5d alpha %.6f\n", r.elements, r.fit.alpha);
      if (!plot.empty()) write_plot_script("conv-eps", out, plot);
      return 0;
    }
    if (*eo) {
      EpsOrderConfig cfg;
      cfg.scenario = scenario();
      EpsOrderResult r = run_eps_order_study(cfg);
      write_eps_order_csv(r, out);
      if (r.fit_ok)
        std::printf("slope p0 %.4f slope phat %.4f\n", r.fit_p0.alpha, r.fit_phat.alpha);
      else
        std::printf("no fit: %s\n", r.fit_message.c_str());
      std::printf("max relative change under tau halving %.3e\n", r.max_time_change);
      if (!plot.empty()) write_plot_script("eps-order", out, plot);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
