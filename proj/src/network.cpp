#include "netpdae/network.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netpdae {

namespace {

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

// candidate extremal points of a polynomial on [a,b]
std::vector<double> critical_points(const std::vector<double>& c, double a, double b) {
  std::vector<double> pts{a, b};
  auto dc = derivative_coeffs(c);
  while (!dc.empty() && dc.back() == 0.0) dc.pop_back();
  if (dc.size() == 2) {
    pts.push_back(-dc[0] / dc[1]);
  } else if (dc.size() > 2) {
    Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(dc.data(), static_cast<Eigen::Index>(dc.size()));
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    std::vector<double> roots;
    solver.realRoots(roots, 1e-10);
    pts.insert(pts.end(), roots.begin(), roots.end());
  }
  std::erase_if(pts, [&](double x) { return x < a || x > b; });
  return pts;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> coeffs) : pieces_{std::move(coeffs)} {
  if (pieces_[0].empty()) pieces_[0].push_back(0.0);
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (pieces_.empty() || breaks_.size() != pieces_.size() + 1)
    throw std::invalid_argument("piecewise polynomial: need one more break than pieces");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
      std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end())
    throw std::invalid_argument("piecewise polynomial: breaks must be strictly increasing");
  for (auto& p : pieces_)
    if (p.empty()) p.push_back(0.0);
}

double PiecewisePolynomial::operator()(double x) const {
  if (pieces_.empty()) return 0.0;
  if (breaks_.empty()) return horner(pieces_[0], x);
  auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  return horner(pieces_[static_cast<std::size_t>(it - breaks_.begin()) - 1], x);
}

int PiecewisePolynomial::degree() const {
  int deg = 0;
  for (const auto& p : pieces_) deg = std::max(deg, static_cast<int>(p.size()) - 1);
  return deg;
}

void PiecewisePolynomial::bind(double length) {
  if (pieces_.empty()) pieces_.push_back({0.0});
  if (breaks_.empty()) {
    breaks_ = {0.0, length};
  } else if (std::abs(breaks_.front()) > 1e-14 || std::abs(breaks_.back() - length) > 1e-12 * length) {
    throw std::invalid_argument("piecewise polynomial breaks do not span the edge");
  }
}

double PiecewisePolynomial::min_on(double a, double b) const {
  double m = std::numeric_limits<double>::infinity();
  if (breaks_.empty()) {
    for (double x : critical_points(pieces_[0], a, b)) m = std::min(m, horner(pieces_[0], x));
    return m;
  }
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    double lo = std::max(a, breaks_[k]), hi = std::min(b, breaks_[k + 1]);
    if (lo > hi) continue;
    for (double x : critical_points(pieces_[k], lo, hi)) m = std::min(m, horner(pieces_[k], x));
  }
  return m;
}

double PiecewisePolynomial::max_on(double a, double b) const {
  PiecewisePolynomial neg = *this;
  for (auto& p : neg.pieces_)
    for (auto& c : p) c = -c;
  return -neg.min_on(a, b);
}

TimeProfile TimeProfile::constant(double c) { return polynomial({c}); }

TimeProfile TimeProfile::polynomial(std::vector<double> coeffs) {
  TimeProfile p;
  p.terms_.push_back({Kind::poly, std::move(coeffs)});
  return p;
}

TimeProfile TimeProfile::sine(double amp, double omega, double phase) {
  TimeProfile p;
  p.terms_.push_back({Kind::sin, {}, amp, omega, phase});
  return p;
}

TimeProfile TimeProfile::cosine(double amp, double omega, double phase) {
  TimeProfile p;
  p.terms_.push_back({Kind::cos, {}, amp, omega, phase});
  return p;
}

TimeProfile TimeProfile::exponential(double amp, double rate) {
  TimeProfile p;
  p.terms_.push_back({Kind::exp, {}, amp, rate, 0.0});
  return p;
}

TimeProfile& TimeProfile::add(Term t) {
  terms_.push_back(std::move(t));
  return *this;
}

double TimeProfile::value(double t) const {
  double v = 0.0;
  for (const auto& term : terms_) {
    switch (term.kind) {
      case Kind::poly: v += horner(term.coeffs, t); break;
      case Kind::sin: v += term.amp * std::sin(term.omega * t + term.phase); break;
      case Kind::cos: v += term.amp * std::cos(term.omega * t + term.phase); break;
      case Kind::exp: v += term.amp * std::exp(term.omega * t); break;
    }
  }
  return v;
}

double TimeProfile::derivative(double t) const {
  double v = 0.0;
  for (const auto& term : terms_) {
    switch (term.kind) {
      case Kind::poly: v += horner(derivative_coeffs(term.coeffs), t); break;
      case Kind::sin: v += term.amp * term.omega * std::cos(term.omega * t + term.phase); break;
      case Kind::cos: v -= term.amp * term.omega * std::sin(term.omega * t + term.phase); break;
      case Kind::exp: v += term.amp * term.omega * std::exp(term.omega * t); break;
    }
  }
  return v;
}

bool TimeProfile::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    if (t.kind == Kind::poly) return std::all_of(t.coeffs.begin(), t.coeffs.end(), [](double c) { return c == 0.0; });
    return t.amp == 0.0;
  });
}

int Network::vertex_index(const std::string& id) const {
  auto it = vertex_ids_.find(id);
  if (it == vertex_ids_.end()) throw std::invalid_argument("unknown vertex '" + id + "'");
  return it->second;
}

int Network::edge_index(const std::string& id) const {
  auto it = edge_ids_.find(id);
  if (it == edge_ids_.end()) throw std::invalid_argument("unknown edge '" + id + "'");
  return it->second;
}

double Network::d_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) m = std::min(m, e.d.min_on(0.0, e.length));
  return m;
}

double Network::a_max() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.a.max_on(0.0, e.length));
  return m;
}

Network build_network(const NetworkSpec& spec) {
  Network net;
  for (const auto& v : spec.vertices) {
    if (net.vertex_ids_.count(v.id)) throw std::invalid_argument("duplicate vertex '" + v.id + "'");
    net.vertex_ids_[v.id] = static_cast<int>(net.vertices_.size());
    net.vertices_.push_back({v.id, v.kind});
  }
  net.incident_.resize(net.vertices_.size());
  for (const auto& es : spec.edges) {
    if (net.edge_ids_.count(es.id)) throw std::invalid_argument("duplicate edge '" + es.id + "'");
    Edge e;
    e.id = es.id;
    e.tail = net.vertex_index(es.tail);
    e.head = net.vertex_index(es.head);
    if (e.tail == e.head) throw std::invalid_argument("edge '" + es.id + "' is a loop");
    if (!(es.length > 0.0)) throw std::invalid_argument("edge '" + es.id + "' needs positive length");
    e.length = es.length;
    e.a = es.a;
    e.d = es.d;
    e.a.bind(e.length);
    e.d.bind(e.length);
    if (!(e.d.min_on(0.0, e.length) > 0.0))
      throw std::invalid_argument("damping d must be positive on edge '" + es.id + "'");
    if (e.a.min_on(0.0, e.length) < 0.0)
      throw std::invalid_argument("damping a must be non-negative on edge '" + es.id + "'");
    int idx = static_cast<int>(net.edges_.size());
    net.edge_ids_[e.id] = idx;
    net.incident_[e.tail].push_back(idx);
    net.incident_[e.head].push_back(idx);
    net.edges_.push_back(std::move(e));
  }
  for (int v = 0; v < net.num_vertices(); ++v) {
    const auto& vert = net.vertices_[v];
    if (net.incident_[v].empty()) throw std::invalid_argument("isolated vertex '" + vert.id + "'");
    if (vert.kind == VertexKind::dirichlet) {
      int s0 = incidence_sign(net, net.incident_[v][0], v);
      for (int e : net.incident_[v])
        if (incidence_sign(net, e, v) != s0)
          throw std::invalid_argument("mixed orientation at boundary vertex '" + vert.id + "'");
      net.dirichlet_.push_back(v);
    } else {
      net.flux_.push_back(v);
    }
  }
  if (net.dirichlet_.empty()) throw std::invalid_argument("network needs at least one dirichlet vertex");
  return net;
}

int incidence_sign(const Network& net, int e, int v) {
  const Edge& edge = net.edges().at(static_cast<std::size_t>(e));
  if (v == edge.tail) return -1;
  if (v == edge.head) return 1;
  throw std::invalid_argument("vertex '" + net.vertices().at(static_cast<std::size_t>(v)).id +
                              "' is not an endpoint of edge '" + edge.id + "'");
}

int incidence_sign(const Network& net, const std::string& e, const std::string& v) {
  return incidence_sign(net, net.edge_index(e), net.vertex_index(v));
}

NetworkSpec to_spec(const Network& net) {
  NetworkSpec s;
  for (const auto& v : net.vertices()) s.vertices.push_back({v.id, v.kind});
  for (const auto& e : net.edges())
    s.edges.push_back({e.id, net.vertices()[e.tail].id, net.vertices()[e.head].id, e.length, e.a, e.d});
  return s;
}

}  // namespace netpdae
