#include "netpdae/experiments.hpp"

#include "netpdae/oracle.hpp"
#include "netpdae/reconstruction.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace netpdae {

std::vector<double> halving_sequence(double tau0, int halvings) {
  std::vector<double> t;
  for (int k = 0; k <= halvings; ++k) t.push_back(std::ldexp(tau0, -k));
  return t;
}

std::vector<double> eps_grid() {
  std::vector<double> e;
  for (int i = 1; i <= 16; ++i) e.push_back(1.0 / (8.0 * std::sqrt(std::ldexp(1.0, i))));
  return e;
}

namespace {

bool is_euler(const std::string& scheme) { return scheme == "euler" || scheme == "implicit-euler"; }

VectorFunction wrap(TimeFunction f) {
  return [f = std::move(f)](double t) { return Vector(f(t)); };
}

int steps_for(double T, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  const double n = T / tau;
  const double r = std::round(n);
  if (r < 1.0 || std::abs(n - r) > 1e-9 * n) throw std::invalid_argument("T / tau must be an integer");
  return static_cast<int>(r);
}

}  // namespace

PressureRun run_pressure(const Problem& pb, const std::string& scheme, const std::string& order,
                         const TimeGrid& grid, double eps, const SolveOptions& opts) {
  const bool euler = is_euler(scheme);
  const ButcherTableau tab = tableau(scheme);
  const int q = tab.stage_order();
  PressureRun r;
  if (order == "1") {
    r.traj = euler ? solve_parabolic_euler(pb.sys, pb.loads, pb.p_init, grid, opts)
                   : solve_parabolic_rk(pb.sys, pb.loads, pb.p_init, grid, tab, opts);
    r.pressure = wrap(euler ? reconstruct(r.traj, Field::p0, ReconstructionKind::pw_linear)
                            : reconstruct(r.traj, Field::p0, ReconstructionKind::pw_polynomial, q));
  } else if (order == "2") {
    r.traj = euler ? solve_coupled_euler(pb.sys, pb.loads, pb.p_init, grid, opts)
                   : solve_coupled_rk(pb.sys, pb.loads, pb.p_init, grid, tab, opts);
    TimeFunction f0 = euler ? reconstruct(r.traj, Field::p0, ReconstructionKind::pw_linear)
                            : reconstruct(r.traj, Field::p0, ReconstructionKind::pw_polynomial, q);
    TimeFunction f1 = euler ? reconstruct(r.traj, Field::p1, ReconstructionKind::pw_linear)
                            : reconstruct(r.traj, Field::p1, ReconstructionKind::pw_polynomial, q - 1);
    EpsCombination c = eps_combination(std::move(f0), std::move(f1), eps);
    r.pressure = [c = std::move(c)](double t) { return Vector(c(t)); };
  } else if (order == "hyperbolic") {
    r.traj = solve_hyperbolic_reference(pb.sys, pb.loads, pb.p_init, pb.m_init, grid, tab, eps, opts);
    r.pressure = wrap(reconstruct(r.traj, Field::p, ReconstructionKind::pw_linear));
  } else {
    throw std::invalid_argument("unknown order '" + order + "' (expected 1, 2 or hyperbolic)");
  }
  return r;
}

Scenario with_reaction(const Scenario& sc, double a) {
  NetworkSpec spec = to_spec(sc.net);
  for (auto& e : spec.edges) e.a = PiecewisePolynomial::constant(a);
  Scenario out = sc;
  out.net = build_network(spec);
  return out;
}

ConvTauResult run_convergence_tau(const ConvTauConfig& cfg) {
  if (cfg.taus.empty()) throw std::invalid_argument("empty tau list");
  if (cfg.ref_refine < 4 || cfg.ref_refine % 4 != 0) throw std::invalid_argument("ref_refine must be a multiple of 4");
  const Scenario& sc = cfg.scenario;
  const double T = sc.solver.T, eps = sc.solver.eps;
  const Problem pb = make_problem(sc);

  const double tau_min = *std::min_element(cfg.taus.begin(), cfg.taus.end());
  const int n_min = steps_for(T, tau_min);
  const int n_ref = n_min * cfg.ref_refine;
  const int stride = cfg.ref_refine / 2;

  ConvTauResult res;
  res.tau_ref = T / n_ref;
  PressureRun ref = run_pressure(pb, "radau2", "hyperbolic", TimeGrid(T, n_ref), eps, {stride});
  res.max_constraint_residual = ref.traj.max_constraint_residual;

  for (double tau : cfg.taus) {
    const int n = steps_for(T, tau);
    if (n_min % n != 0) throw std::invalid_argument("every tau must be a power-of-two multiple of the smallest");
    const TimeGrid grid(T, n);
    const auto samples = node_midpoint_samples(T, n);
    ConvTauRow row;
    row.tau = tau;
    double* slots[4] = {&row.err_p0_euler, &row.err_phat_euler, &row.err_p0_radau, &row.err_phat_radau};
    int k = 0;
    for (const char* scheme : {"euler", "radau2"}) {
      for (const char* order : {"1", "2"}) {
        PressureRun run = run_pressure(pb, scheme, order, grid, eps);
        res.max_constraint_residual = std::max(res.max_constraint_residual, run.traj.max_constraint_residual);
        *slots[k++] = norm_C_L2([&](double t) { return Vector(run.pressure(t) - ref.pressure(t)); }, pb.sys.M2,
                                samples);
      }
    }
    res.rows.push_back(row);
  }

  if (cfg.check_reference) {
    PressureRun coarse = run_pressure(pb, "radau2", "hyperbolic", TimeGrid(T, n_ref / 2), eps, {stride / 2});
    res.max_constraint_residual = std::max(res.max_constraint_residual, coarse.traj.max_constraint_residual);
    res.reference_diff = norm_C_L2([&](double t) { return Vector(coarse.pressure(t) - ref.pressure(t)); },
                                   pb.sys.M2, node_midpoint_samples(T, n_min));
    double smallest = 0.0;
    for (const auto& r : res.rows)
      for (double e : {r.err_p0_euler, r.err_phat_euler, r.err_p0_radau, r.err_phat_radau})
        if (e > 0.0) smallest = smallest == 0.0 ? e : std::min(smallest, e);
    const double scale = norm_C_L2(ref.pressure, pb.sys.M2, node_midpoint_samples(T, n_min));
    const double allowed = std::max(0.05 * smallest, 1e-10 * std::max(scale, 1.0));
    if (res.reference_diff > allowed) {
      std::ostringstream os;
      os << "reference not converged: |p(tau_ref) - p(2 tau_ref)| = " << res.reference_diff << " exceeds " << allowed
         << " (tau_ref = " << res.tau_ref << ")";
      throw std::runtime_error(os.str());
    }
  }
  return res;
}

ModalPipe::ModalPipe(int elements, const Vector& m_init) : n_(elements) {
  if (elements < 2) throw std::invalid_argument("modal pipe needs at least two elements");
  if (m_init.size() != elements) throw std::invalid_argument("initial flux has the wrong size");
  const Scenario sc = builtin_scenario("single-pipe");
  const AssembledSystem sys = assemble(sc.net, MeshParams::uniform(elements));
  const int nd = sys.n_dirichlet, ni = sys.n_p - nd;
  const Eigen::MatrixXd K = sys.K.to_dense().rightCols(ni);
  const Eigen::MatrixXd M2 = sys.M2.to_dense().bottomRightCorner(ni, ni);
  const Eigen::VectorXd m1 = sys.M1.to_dense().diagonal();
  const Eigen::MatrixXd A = K.transpose() * m1.cwiseInverse().asDiagonal() * K;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M2);
  if (es.info() != Eigen::Success) throw std::runtime_error("modal pipe: eigendecomposition failed");
  V_ = es.eigenvectors();
  s_ = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  if (s_.minCoeff() <= 0.0) throw std::runtime_error("modal pipe: singular stiffness");
  b0_ = (V_.transpose() * (K.transpose() * m_init)).cwiseQuotient(s_);
}

Eigen::VectorXd ModalPipe::amplitude(double t, double eps) const {
  // eps c'' + c' + s^2 c = 0, c(0) = 0, c'(0) = s b0
  Eigen::VectorXd c(s_.size());
  for (Eigen::Index i = 0; i < s_.size(); ++i) {
    const double th = s_[i] * s_[i];
    const double disc = 1.0 - 4.0 * eps * th;
    double g;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      const double r1 = -2.0 * th / (1.0 + sq), D = sq / eps;
      g = std::exp(r1 * t) * -std::expm1(-D * t) / D;
    } else if (disc < 0.0) {
      const double om = std::sqrt(-disc) / (2.0 * eps);
      g = std::exp(-t / (2.0 * eps)) * std::sin(om * t) / om;
    } else {
      g = t * std::exp(-t / (2.0 * eps));
    }
    c[i] = s_[i] * b0_[i] * g;
  }
  return c;
}

Eigen::VectorXd ModalPipe::pressure(double t, double eps) const { return V_ * amplitude(t, eps); }

double ModalPipe::pressure_norm(double t, double eps) const { return amplitude(t, eps).norm(); }

double ModalPipe::c_norm(double eps, double T) const {
  std::vector<double> ts;
  for (int k = 0; k <= 200; ++k) ts.push_back(T * k / 200.0);
  for (double t = eps / 64.0; t < T; t *= std::pow(2.0, 0.125)) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  std::vector<double> vals;
  for (double t : ts) vals.push_back(pressure_norm(t, eps));
  const auto i = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double best = vals[i];
  if (i == 0 || i + 1 == ts.size()) return best;
  // golden section on the bracketing interval
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = ts[i - 1], b = ts[i + 1];
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = pressure_norm(x1, eps), f2 = pressure_norm(x2, eps);
  for (int it = 0; it < 80 && b - a > 1e-15 * b; ++it) {
    if (f1 > f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = pressure_norm(x1, eps);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = pressure_norm(x2, eps);
    }
  }
  return std::max({best, f1, f2});
}

Vector cosine_series_flux(int elements, double alpha, int kmax) {
  Vector m(elements);
  for (int e = 0; e < elements; ++e)
    m[e] = elements * series_initial_flux_integral(static_cast<double>(e) / elements,
                                                   static_cast<double>(e + 1) / elements, alpha, kmax);
  return m;
}

std::vector<ConvEpsRow> run_convergence_eps(const ConvEpsConfig& cfg) {
  if (cfg.meshes.empty() || cfg.eps.size() < 2) throw std::invalid_argument("need meshes and at least two eps values");
  for (double e : cfg.eps)
    if (!(e > 0.0)) throw std::invalid_argument("eps must be positive");
  const int kt = cfg.k_trunc > 0 ? cfg.k_trunc : 10 * *std::max_element(cfg.meshes.begin(), cfg.meshes.end());
  std::vector<ConvEpsRow> rows;
  for (int N : cfg.meshes) {
    // zero initial pressure makes the parabolic limit vanish, so err = |p_h(eps)|
    ModalPipe pipe(N, cosine_series_flux(N, cfg.alpha, kt));
    ConvEpsRow row;
    row.elements = N;
    row.h = 1.0 / N;
    std::vector<std::pair<double, double>> pairs;
    for (double e : cfg.eps) {
      row.errors.push_back(pipe.c_norm(e, cfg.T));
      pairs.emplace_back(e, row.errors.back());
    }
    row.fit = fit_power_law(pairs);
    rows.push_back(std::move(row));
  }
  return rows;
}

EpsOrderResult run_eps_order_study(const EpsOrderConfig& cfg) {
  if (cfg.ref_refine < 4 || cfg.ref_refine % 4 != 0) throw std::invalid_argument("ref_refine must be a multiple of 4");
  EpsOrderResult res;
  for (double eps : cfg.eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    Scenario sc = cfg.scenario;
    sc.solver.eps = eps;
    const double T = sc.solver.T;
    const Problem pb = make_problem(sc);
    const int n = steps_for(T, cfg.tau);
    PressureRun ref =
        run_pressure(pb, "radau2", "hyperbolic", TimeGrid(T, n * cfg.ref_refine), eps, {cfg.ref_refine / 4});
    res.max_constraint_residual = std::max(res.max_constraint_residual, ref.traj.max_constraint_residual);
    EpsOrderRow row;
    row.eps = eps;
    for (int refine : {1, 2}) {
      const TimeGrid grid(T, n * refine);
      const auto samples = node_midpoint_samples(T, n * refine);
      double err[2];
      int k = 0;
      for (const char* order : {"1", "2"}) {
        PressureRun run = run_pressure(pb, cfg.scheme, order, grid, eps);
        res.max_constraint_residual = std::max(res.max_constraint_residual, run.traj.max_constraint_residual);
        err[k++] = norm_C_L2([&](double t) { return Vector(run.pressure(t) - ref.pressure(t)); }, pb.sys.M2,
                             samples);
      }
      (refine == 1 ? row.err_p0 : row.err_p0_half) = err[0];
      (refine == 1 ? row.err_phat : row.err_phat_half) = err[1];
    }
    for (auto [a, b] : {std::pair{row.err_p0, row.err_p0_half}, std::pair{row.err_phat, row.err_phat_half}})
      if (b > 0.0) res.max_time_change = std::max(res.max_time_change, std::abs(a - b) / b);
    res.rows.push_back(row);
  }
  std::vector<std::pair<double, double>> p0, ph;
  for (const auto& r : res.rows) {
    p0.emplace_back(r.eps, r.err_p0);
    ph.emplace_back(r.eps, r.err_phat);
  }
  try {
    res.fit_p0 = fit_power_law(p0);
    res.fit_phat = fit_power_law(ph);
    res.fit_ok = true;
  } catch (const std::invalid_argument& e) {
    res.fit_message = e.what();
  }
  return res;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << std::setprecision(12) << std::scientific;
  return out;
}

}  // namespace

void write_conv_tau_csv(const ConvTauResult& r, const std::string& path) {
  auto out = open_out(path);
  out << "tau,err_p0_euler,err_phat_euler,err_p0_radau,err_phat_radau\n";
  for (const auto& row : r.rows)
    out << row.tau << ',' << row.err_p0_euler << ',' << row.err_phat_euler << ',' << row.err_p0_radau << ','
        << row.err_phat_radau << '\n';
}

void write_conv_eps_csv(const std::vector<ConvEpsRow>& rows, const std::vector<double>& eps, const std::string& path) {
  auto out = open_out(path);
  out << "N,h,alpha,C,fit_residual";
  for (std::size_t i = 0; i < eps.size(); ++i) out << ",err_eps" << i + 1;
  out << '\n';
  for (const auto& row : rows) {
    out << row.elements << ',' << row.h << ',' << row.fit.alpha << ',' << row.fit.C << ',' << row.fit.residual;
    for (double e : row.errors) out << ',' << e;
    out << '\n';
  }
}

void write_eps_order_csv(const EpsOrderResult& r, const std::string& path) {
  auto out = open_out(path);
  out << "eps,err_p0,err_phat,err_p0_half_tau,err_phat_half_tau\n";
  for (const auto& row : r.rows)
    out << row.eps << ',' << row.err_p0 << ',' << row.err_phat << ',' << row.err_p0_half << ',' << row.err_phat_half
        << '\n';
}

void write_plot_script(const std::string& kind, const std::string& csv_path, const std::string& script_path) {
  std::ofstream out(script_path);
  if (!out) throw std::runtime_error("cannot write '" + script_path + "'");
  out << "import matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\nimport pandas as pd\n\n"
      << "df = pd.read_csv('" << csv_path << "')\nfig, ax = plt.subplots()\n";
  if (kind == "conv-tau") {
    out << "for col in ['err_p0_euler', 'err_phat_euler', 'err_p0_radau', 'err_phat_radau']:\n"
           "    ax.loglog(df['tau'], df[col], marker='o', label=col)\n"
           "ax.set_xlabel('tau')\nax.set_ylabel('C(0,T;L2) error')\n";
  } else if (kind == "conv-eps") {
    out << "ax.semilogx(df['h'], df['alpha'], marker='o')\nax.set_xlabel('h')\nax.set_ylabel('alpha')\n";
  } else if (kind == "eps-order") {
    out << "for col in ['err_p0', 'err_phat']:\n"
           "    ax.loglog(df['eps'], df[col], marker='o', label=col)\n"
           "ax.set_xlabel('eps')\nax.set_ylabel('C(0,T;L2) error')\n";
  } else {
    throw std::invalid_argument("unknown plot kind '" + kind + "'");
  }
  out << "ax.grid(True, which='both')\nif ax.get_legend_handles_labels()[0]:\n    ax.legend()\n"
      << "fig.savefig('" << csv_path << ".png', dpi=150)\n";
}

}  // namespace netpdae
