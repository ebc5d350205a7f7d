#include "netpdae/experiments.hpp"
#include "netpdae/oracle.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

namespace py = pybind11;
using namespace netpdae;

namespace {

int steps(double T, double tau) {
  const double n = T / tau;
  if (!(tau > 0.0) || std::abs(n - std::round(n)) > 1e-9 * n) throw std::invalid_argument("T / tau must be an integer");
  return static_cast<int>(std::round(n));
}

py::dict trajectory_dict(const Trajectory& tr) {
  py::dict fields;
  for (const auto& [f, mat] : tr.data) fields[py::str(field_name(f))] = mat;
  py::dict d;
  d["times"] = tr.times;
  d["fields"] = fields;
  d["max_constraint_residual"] = tr.max_constraint_residual;
  d["scheme"] = tr.scheme;
  return d;
}

py::dict py_solve(Scenario sc, std::optional<std::string> scheme, std::optional<std::string> order,
               std::optional<double> tau, std::optional<double> eps, std::optional<int> elements, int stride) {
  if (scheme) sc.solver.scheme = *scheme;
  if (order) sc.solver.order = *order;
  if (tau) sc.solver.tau = *tau;
  if (eps) sc.solver.eps = *eps;
  if (elements) sc.solver.elements_per_edge = {*elements};
  Trajectory tr;
  {
    py::gil_scoped_release nogil;
    const Problem pb = make_problem(sc);
    tr = run_pressure(pb, sc.solver.scheme, sc.solver.order, TimeGrid(sc.solver.T, steps(sc.solver.T, sc.solver.tau)),
                      sc.solver.eps, SolveOptions{stride})
             .traj;
  }
  return trajectory_dict(tr);
}

py::dict py_matrices(Scenario sc, std::optional<int> elements) {
  if (elements) sc.solver.elements_per_edge = {*elements};
  const AssembledSystem s = assemble(sc.net, MeshParams{sc.solver.elements_per_edge});
  py::dict d;
  for (auto [name, m] : {std::pair{"M1", &s.M1}, {"M2", &s.M2}, {"Md", &s.Md}, {"Ma", &s.Ma}, {"K", &s.K},
                         {"B", &s.B}, {"C", &s.C}})
    d[name] = m->to_dense();
  d["n_dirichlet"] = s.n_dirichlet;
  d["n_flux"] = s.n_flux;
  const Index2Report rep = verify_index2(s, sc.solver.eps);
  d["index2_pass"] = rep.pass;
  return d;
}

py::dict fit_dict(const PowerLawFit& f) {
  py::dict d;
  d["alpha"] = f.alpha;
  d["C"] = f.C;
  d["residual"] = f.residual;
  return d;
}

py::dict py_conv_tau(std::optional<Scenario> sc, std::optional<std::vector<double>> taus, int ref_refine) {
  ConvTauConfig cfg;
  if (sc) cfg.scenario = *sc;
  if (taus) cfg.taus = *taus;
  cfg.ref_refine = ref_refine;
  ConvTauResult r;
  {
    py::gil_scoped_release nogil;
    r = run_convergence_tau(cfg);
  }
  py::list rows;
  for (const auto& row : r.rows) {
    py::dict d;
    d["tau"] = row.tau;
    d["err_p0_euler"] = row.err_p0_euler;
    d["err_phat_euler"] = row.err_phat_euler;
    d["err_p0_radau"] = row.err_p0_radau;
    d["err_phat_radau"] = row.err_phat_radau;
    rows.append(d);
  }
  py::dict out;
  out["rows"] = rows;
  out["tau_ref"] = r.tau_ref;
  out["reference_diff"] = r.reference_diff;
  out["max_constraint_residual"] = r.max_constraint_residual;
  return out;
}

py::list py_conv_eps(std::vector<int> meshes, std::optional<std::vector<double>> eps, double T, double alpha,
                  int k_trunc) {
  ConvEpsConfig cfg;
  cfg.meshes = std::move(meshes);
  if (eps) cfg.eps = *eps;
  cfg.T = T;
  cfg.alpha = alpha;
  cfg.k_trunc = k_trunc;
  std::vector<ConvEpsRow> rows;
  {
    py::gil_scoped_release nogil;
    rows = run_convergence_eps(cfg);
  }
  py::list out;
  for (const auto& row : rows) {
    py::dict d;
    d["N"] = row.elements;
    d["h"] = row.h;
    d["fit"] = fit_dict(row.fit);
    d["errors"] = row.errors;
    out.append(d);
  }
  return out;
}

py::dict py_eps_order(std::optional<Scenario> sc, std::optional<std::vector<double>> eps, std::string scheme, double tau,
                   int ref_refine) {
  EpsOrderConfig cfg;
  if (sc) cfg.scenario = *sc;
  if (eps) cfg.eps = *eps;
  cfg.scheme = std::move(scheme);
  cfg.tau = tau;
  cfg.ref_refine = ref_refine;
  EpsOrderResult r;
  {
    py::gil_scoped_release nogil;
    r = run_eps_order_study(cfg);
  }
  py::list rows;
  for (const auto& row : r.rows) {
    py::dict d;
    d["eps"] = row.eps;
    d["err_p0"] = row.err_p0;
    d["err_phat"] = row.err_phat;
    d["err_p0_half_tau"] = row.err_p0_half;
    d["err_phat_half_tau"] = row.err_phat_half;
    rows.append(d);
  }
  py::dict out;
  out["rows"] = rows;
  out["fit_ok"] = r.fit_ok;
  out["fit_message"] = r.fit_message;
  if (r.fit_ok) {
    out["fit_p0"] = fit_dict(r.fit_p0);
    out["fit_phat"] = fit_dict(r.fit_phat);
  }
  out["max_time_change"] = r.max_time_change;
  out["max_constraint_residual"] = r.max_constraint_residual;
  return out;
}

}  // namespace

PYBIND11_MODULE(_netpdae, m) {
  m.doc() = "Damped linear wave systems on networks and their parabolic limits.";

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_property_readonly("num_vertices", [](const Scenario& s) { return s.net.num_vertices(); })
      .def_property_readonly("num_edges", [](const Scenario& s) { return s.net.num_edges(); })
      .def_property_readonly("eps", [](const Scenario& s) { return s.solver.eps; })
      .def_property_readonly("T", [](const Scenario& s) { return s.solver.T; })
      .def_property_readonly("tau", [](const Scenario& s) { return s.solver.tau; })
      .def_property_readonly("scheme", [](const Scenario& s) { return s.solver.scheme; })
      .def_property_readonly("order", [](const Scenario& s) { return s.solver.order; })
      .def_property_readonly("elements_per_edge", [](const Scenario& s) { return s.solver.elements_per_edge; })
      .def("to_json", &scenario_to_json)
      .def("__repr__", [](const Scenario& s) { return "<Scenario '" + s.name + "'>"; });

  m.def("builtin_scenario", &builtin_scenario, py::arg("name"));
  m.def("load_scenario", &load_scenario, py::arg("name_or_path"));
  m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
  m.def("with_reaction", &with_reaction, py::arg("scenario"), py::arg("a"));

  m.def("solve", &py_solve, py::arg("scenario"), py::arg("scheme") = py::none(), py::arg("order") = py::none(),
        py::arg("tau") = py::none(), py::arg("eps") = py::none(), py::arg("elements_per_edge") = py::none(),
        py::arg("stride") = 1);
  m.def("matrices", &py_matrices, py::arg("scenario"), py::arg("elements_per_edge") = py::none());

  m.def("tableau", [](const std::string& name) {
    const ButcherTableau t = tableau(name);
    py::dict d;
    d["name"] = t.name();
    d["A"] = t.A();
    d["b"] = t.b();
    d["c"] = t.c();
    d["order"] = t.order();
    d["stage_order"] = t.stage_order();
    return d;
  }, py::arg("name"));

  m.def("split_index", &split_index, py::arg("eps"));
  m.def("eps_for_split_index", &eps_for_split_index, py::arg("K"));
  m.def("series_initial_flux", &series_initial_flux, py::arg("x"), py::arg("alpha"), py::arg("kmax"));
  m.def("pressure_mode", [](int k, double t, double alpha, double eps, int kmax) {
    return pressure_mode(k, t, SeriesParams{alpha, eps, kmax});
  }, py::arg("k"), py::arg("t"), py::arg("alpha"), py::arg("eps"), py::arg("kmax"));
  m.def("series_solution", [](double x, double t, double alpha, double eps, int kmax) {
    return series_solution_hyperbolic(x, t, SeriesParams{alpha, eps, kmax});
  }, py::arg("x"), py::arg("t"), py::arg("alpha"), py::arg("eps"), py::arg("kmax"));
  m.def("norm_bounds", [](double alpha, double eps, int kmax) {
    const SeriesParams sp{alpha, eps, kmax};
    return std::pair{sharpness_lower_bound(sp), energy_upper_bound(sp)};
  }, py::arg("alpha"), py::arg("eps"), py::arg("kmax"));

  py::class_<ModalPipe>(m, "ModalPipe")
      .def(py::init([](int elements, double alpha, int kmax) {
        return ModalPipe(elements, cosine_series_flux(elements, alpha, kmax > 0 ? kmax : 10 * elements));
      }), py::arg("elements"), py::arg("alpha") = 0.55, py::arg("kmax") = 0)
      .def_property_readonly("elements", &ModalPipe::elements)
      .def_property_readonly("frequencies", &ModalPipe::frequencies)
      .def("pressure", &ModalPipe::pressure, py::arg("t"), py::arg("eps"))
      .def("pressure_norm", &ModalPipe::pressure_norm, py::arg("t"), py::arg("eps"))
      .def("c_norm", &ModalPipe::c_norm, py::arg("eps"), py::arg("T"));

  m.def("halving_sequence", &halving_sequence, py::arg("tau0"), py::arg("halvings"));
  m.def("eps_grid", &eps_grid);
  m.def("fit_power_law", [](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < x.size(); ++i) pts.emplace_back(x[i], y[i]);
    return fit_dict(fit_power_law(pts));
  }, py::arg("x"), py::arg("y"));

  m.def("conv_tau", &py_conv_tau, py::arg("scenario") = py::none(), py::arg("taus") = py::none(),
        py::arg("ref_refine") = 32);
  m.def("conv_eps", &py_conv_eps, py::arg("meshes"), py::arg("eps") = py::none(), py::arg("T") = 1.0,
        py::arg("alpha") = 0.55, py::arg("k_trunc") = 0);
  m.def("eps_order", &py_eps_order, py::arg("scenario") = py::none(), py::arg("eps") = py::none(),
        py::arg("scheme") = "radau2", py::arg("tau") = 0.2 / 1024.0, py::arg("ref_refine") = 64);
}
