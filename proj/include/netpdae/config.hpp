#pragma once

#include "netpdae/assembly.hpp"
#include "netpdae/network.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>

namespace netpdae {

struct CosineSeries {
  double alpha = 0.55;
  int kmax = 1000;
  bool operator==(const CosineSeries&) const = default;
};

using FluxProfile = std::variant<PiecewisePolynomial, CosineSeries>;

struct InitialData {
  std::map<int, PiecewisePolynomial> p;  // per edge, missing edges are zero
  bool m_consistent = false;             // m(0) = d^-1 (f(0) - dp/dx)
  std::map<int, FluxProfile> m;
};

struct SolverSettings {
  double eps = 1e-3;
  double T = 1.0;
  std::vector<int> elements_per_edge{10};
  std::string scheme = "radau2";
  std::string order = "1";
  double tau = 0.01;
};

struct Scenario {
  std::string name;
  Network net;
  BoundaryAndSourceData data;
  InitialData initial;
  SolverSettings solver;
};

// Built-in scenarios: "fig1-network", "single-pipe".
Scenario builtin_scenario(const std::string& name);
// A built-in name or a path to a JSON description.
Scenario load_scenario(const std::string& name_or_path);
Scenario parse_scenario(const std::string& json_text);
std::string scenario_to_json(const Scenario& sc);

struct Problem {
  AssembledSystem sys;
  LoadEvaluator loads;
  Vector p_init, m_init;
};

Problem make_problem(const Scenario& sc, const MeshParams& mesh);
inline Problem make_problem(const Scenario& sc) { return make_problem(sc, MeshParams{sc.solver.elements_per_edge}); }

}  // namespace netpdae
