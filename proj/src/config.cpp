#include "netpdae/config.hpp"

#include "netpdae/oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace netpdae {

using nlohmann::json;

namespace {

PiecewisePolynomial profile_from_json(const json& j) {
  if (j.is_number()) return PiecewisePolynomial::constant(j.get<double>());
  if (j.is_array()) return PiecewisePolynomial(j.get<std::vector<double>>());
  if (j.is_object() && j.contains("pieces")) {
    if (!j.contains("breaks")) return PiecewisePolynomial(j.at("pieces").at(0).get<std::vector<double>>());
    return PiecewisePolynomial(j.at("breaks").get<std::vector<double>>(),
                               j.at("pieces").get<std::vector<std::vector<double>>>());
  }
  throw std::invalid_argument("cannot parse spatial profile: " + j.dump());
}

json profile_to_json(const PiecewisePolynomial& p) {
  if (p.single_piece()) return p.pieces().empty() ? json(0.0) : json(p.pieces()[0]);
  return json{{"breaks", p.breaks()}, {"pieces", p.pieces()}};
}

TimeProfile::Term time_term_from_json(const json& j) {
  using K = TimeProfile::Kind;
  if (j.is_number()) return {K::poly, {j.get<double>()}};
  if (j.contains("poly")) return {K::poly, j.at("poly").get<std::vector<double>>()};
  for (auto [key, kind] : {std::pair{"sin", K::sin}, std::pair{"cos", K::cos}}) {
    if (j.contains(key)) {
      const json& a = j.at(key);
      return {kind, {}, a.value("amp", 1.0), a.value("omega", 1.0), a.value("phase", 0.0)};
    }
  }
  if (j.contains("exp")) {
    const json& a = j.at("exp");
    return {K::exp, {}, a.value("amp", 1.0), a.value("rate", 1.0), 0.0};
  }
  throw std::invalid_argument("cannot parse time profile: " + j.dump());
}

TimeProfile time_from_json(const json& j) {
  TimeProfile p;
  if (j.is_number()) return TimeProfile::constant(j.get<double>());
  if (j.is_array() && !j.empty() && j[0].is_number()) return TimeProfile::polynomial(j.get<std::vector<double>>());
  if (j.is_array()) {
    for (const auto& t : j) p.add(time_term_from_json(t));
    return p;
  }
  return p.add(time_term_from_json(j));
}

json time_to_json(const TimeProfile& p) {
  json arr = json::array();
  for (const auto& t : p.terms()) {
    switch (t.kind) {
      case TimeProfile::Kind::poly: arr.push_back({{"poly", t.coeffs}}); break;
      case TimeProfile::Kind::sin:
        arr.push_back({{"sin", {{"amp", t.amp}, {"omega", t.omega}, {"phase", t.phase}}}});
        break;
      case TimeProfile::Kind::cos:
        arr.push_back({{"cos", {{"amp", t.amp}, {"omega", t.omega}, {"phase", t.phase}}}});
        break;
      case TimeProfile::Kind::exp: arr.push_back({{"exp", {{"amp", t.amp}, {"rate", t.omega}}}}); break;
    }
  }
  return arr;
}

SpaceTimeField field_from_json(const json& j) {
  SpaceTimeField f;
  if (j.is_number()) {
    f.terms.push_back({TimeProfile::constant(1.0), PiecewisePolynomial::constant(j.get<double>())});
    return f;
  }
  auto term = [](const json& t) {
    return SpaceTimeField::Term{t.contains("t") ? time_from_json(t.at("t")) : TimeProfile::constant(1.0),
                                t.contains("x") ? profile_from_json(t.at("x")) : PiecewisePolynomial::constant(1.0)};
  };
  if (j.is_array())
    for (const auto& t : j) f.terms.push_back(term(t));
  else
    f.terms.push_back(term(j));
  return f;
}

json field_to_json(const SpaceTimeField& f) {
  json arr = json::array();
  for (const auto& t : f.terms) arr.push_back({{"t", time_to_json(t.time)}, {"x", profile_to_json(t.profile)}});
  return arr;
}

FluxProfile flux_from_json(const json& j) {
  if (j.is_object() && j.contains("cosine_series")) {
    const json& c = j.at("cosine_series");
    return CosineSeries{c.value("alpha", 0.55), c.value("kmax", 1000)};
  }
  return profile_from_json(j);
}

json flux_to_json(const FluxProfile& f) {
  if (auto* c = std::get_if<CosineSeries>(&f)) return {{"cosine_series", {{"alpha", c->alpha}, {"kmax", c->kmax}}}};
  return profile_to_json(std::get<PiecewisePolynomial>(f));
}

VertexKind kind_from_string(const std::string& s) {
  if (s == "dirichlet") return VertexKind::dirichlet;
  if (s == "flux") return VertexKind::flux;
  throw std::invalid_argument("unknown vertex kind '" + s + "'");
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.name = j.value("name", "custom");
  NetworkSpec spec;
  for (const auto& v : j.at("vertices")) spec.vertices.push_back({v.at("id"), kind_from_string(v.value("kind", "flux"))});
  for (const auto& e : j.at("edges")) {
    NetworkSpec::EdgeSpec es{e.at("id"), e.at("tail"), e.at("head"), e.value("length", 1.0),
                             PiecewisePolynomial::constant(0.0), PiecewisePolynomial::constant(1.0)};
    if (e.contains("a")) es.a = profile_from_json(e.at("a"));
    if (e.contains("d")) es.d = profile_from_json(e.at("d"));
    spec.edges.push_back(std::move(es));
  }
  sc.net = build_network(spec);

  if (j.contains("data")) {
    const json& d = j.at("data");
    if (d.contains("f"))
      for (const auto& [id, v] : d.at("f").items()) sc.data.f[sc.net.edge_index(id)] = field_from_json(v);
    if (d.contains("g"))
      for (const auto& [id, v] : d.at("g").items()) sc.data.g[sc.net.edge_index(id)] = field_from_json(v);
    if (d.contains("h"))
      for (const auto& [id, v] : d.at("h").items()) sc.data.h[sc.net.vertex_index(id)] = time_from_json(v);
    if (d.contains("r"))
      for (const auto& [id, v] : d.at("r").items()) sc.data.r[sc.net.vertex_index(id)] = time_from_json(v);
  }
  if (j.contains("initial")) {
    const json& in = j.at("initial");
    if (in.contains("p"))
      for (const auto& [id, v] : in.at("p").items()) sc.initial.p[sc.net.edge_index(id)] = profile_from_json(v);
    if (in.contains("m")) {
      const json& m = in.at("m");
      if (m.is_string()) {
        if (m.get<std::string>() != "consistent") throw std::invalid_argument("initial m must be 'consistent' or a map");
        sc.initial.m_consistent = true;
      } else {
        for (const auto& [id, v] : m.items()) sc.initial.m[sc.net.edge_index(id)] = flux_from_json(v);
      }
    }
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    sc.solver.eps = s.value("eps", sc.solver.eps);
    sc.solver.T = s.value("T", sc.solver.T);
    if (s.contains("elements_per_edge")) {
      const json& e = s.at("elements_per_edge");
      sc.solver.elements_per_edge = e.is_array() ? e.get<std::vector<int>>() : std::vector<int>{e.get<int>()};
    }
    sc.solver.scheme = s.value("scheme", sc.solver.scheme);
    if (s.contains("order")) sc.solver.order = s.at("order").is_string() ? s.at("order").get<std::string>()
                                                                          : std::to_string(s.at("order").get<int>());
    sc.solver.tau = s.value("tau", sc.solver.tau);
  }
  return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) { return scenario_from_json(json::parse(json_text)); }

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  NetworkSpec spec = to_spec(sc.net);
  for (const auto& v : spec.vertices)
    j["vertices"].push_back({{"id", v.id}, {"kind", v.kind == VertexKind::dirichlet ? "dirichlet" : "flux"}});
  for (const auto& e : spec.edges)
    j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", e.length},
                          {"a", profile_to_json(e.a)}, {"d", profile_to_json(e.d)}});
  json data = json::object();
  const auto& E = sc.net.edges();
  const auto& V = sc.net.vertices();
  for (const auto& [e, f] : sc.data.f) data["f"][E[e].id] = field_to_json(f);
  for (const auto& [e, g] : sc.data.g) data["g"][E[e].id] = field_to_json(g);
  for (const auto& [v, h] : sc.data.h) data["h"][V[v].id] = time_to_json(h);
  for (const auto& [v, r] : sc.data.r) data["r"][V[v].id] = time_to_json(r);
  j["data"] = data;
  json init = json::object();
  for (const auto& [e, p] : sc.initial.p) init["p"][E[e].id] = profile_to_json(p);
  if (sc.initial.m_consistent)
    init["m"] = "consistent";
  else
    for (const auto& [e, m] : sc.initial.m) init["m"][E[e].id] = flux_to_json(m);
  j["initial"] = init;
  j["solver"] = {{"eps", sc.solver.eps}, {"T", sc.solver.T}, {"elements_per_edge", sc.solver.elements_per_edge},
                 {"scheme", sc.solver.scheme}, {"order", sc.solver.order}, {"tau", sc.solver.tau}};
  return j.dump(2);
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "fig1-network") {
    return parse_scenario(R"({
      "name": "fig1-network",
      "vertices": [{"id": "v1", "kind": "dirichlet"}, {"id": "v2"}, {"id": "v3"}, {"id": "v4"}, {"id": "v5"},
                   {"id": "v6", "kind": "dirichlet"}],
      "edges": [{"id": "e1", "tail": "v1", "head": "v2"}, {"id": "e2", "tail": "v2", "head": "v3"},
                {"id": "e3", "tail": "v2", "head": "v4"}, {"id": "e4", "tail": "v3", "head": "v5"},
                {"id": "e5", "tail": "v4", "head": "v5"}, {"id": "e6", "tail": "v4", "head": "v6"}],
      "data": {"f": {"e2": 1, "e4": 1}, "h": {"v1": 0, "v6": 0}, "r": {"v2": -2, "v3": 0, "v4": -1, "v5": 1}},
      "initial": {"p": {"e1": [0, 1], "e2": 1, "e3": 1, "e4": 1, "e5": 1, "e6": [1, -1]},
                  "m": {"e1": -1, "e2": 1, "e3": 0, "e4": 1, "e5": 0, "e6": 1}},
      "solver": {"eps": 1e-3, "T": 1, "elements_per_edge": 10, "scheme": "radau2", "order": "1", "tau": 0.0125}
    })");
  }
  if (name == "single-pipe") {
    return parse_scenario(R"({
      "name": "single-pipe",
      "vertices": [{"id": "v1", "kind": "dirichlet"}, {"id": "v2", "kind": "dirichlet"}],
      "edges": [{"id": "e1", "tail": "v1", "head": "v2"}],
      "data": {"h": {"v1": 0, "v2": 0}},
      "initial": {"p": {"e1": 0}, "m": {"e1": {"cosine_series": {"alpha": 0.55, "kmax": 12810}}}},
      "solver": {"eps": 0.0015831434944115277, "T": 1, "elements_per_edge": 40, "scheme": "radau2",
                 "order": "hyperbolic", "tau": 1e-4}
    })");
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Scenario load_scenario(const std::string& name_or_path) {
  if (name_or_path == "fig1-network" || name_or_path == "single-pipe") return builtin_scenario(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw std::runtime_error("cannot open config '" + name_or_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

Problem make_problem(const Scenario& sc, const MeshParams& mesh) {
  AssembledSystem sys = assemble(sc.net, mesh);
  LoadEvaluator loads(sc.net, sys, sc.data);
  std::map<int, PiecewisePolynomial> p = sc.initial.p;
  for (auto& [e, prof] : p) prof.bind(sc.net.edges()[e].length);
  Vector p_init = interpolate_potential(sc.net, sys, [&](int e, double x) {
    auto it = p.find(e);
    return it == p.end() ? 0.0 : it->second(x);
  });
  Vector m_init;
  if (sc.initial.m_consistent) {
    m_init = consistent_initial_flux(sys, p_init, loads.F(0.0));
  } else {
    m_init = project_flux(sys, [&](int e, double xa, double xb) {
      auto it = sc.initial.m.find(e);
      if (it == sc.initial.m.end()) return 0.0;
      if (auto* c = std::get_if<CosineSeries>(&it->second))
        return series_initial_flux_integral(xa / sc.net.edges()[e].length, xb / sc.net.edges()[e].length, c->alpha,
                                            c->kmax) *
               sc.net.edges()[e].length;
      PiecewisePolynomial prof = std::get<PiecewisePolynomial>(it->second);
      prof.bind(sc.net.edges()[e].length);
      return integrate([&](double x) { return prof(x); }, xa, xb, prof.breaks());
    });
  }
  return Problem{std::move(sys), std::move(loads), std::move(p_init), std::move(m_init)};
}

}  // namespace netpdae
