#pragma once

#include <map>
#include <string>
#include <vector>

namespace netpdae {

// Polynomial pieces in the local edge coordinate x (ascending powers of x,
// not shifted per piece). breaks = {0, x_1, ..., length}.
class PiecewisePolynomial {
public:
  PiecewisePolynomial() = default;
  explicit PiecewisePolynomial(std::vector<double> coeffs);
  PiecewisePolynomial(std::vector<double> breaks, std::vector<std::vector<double>> pieces);

  static PiecewisePolynomial constant(double c) { return PiecewisePolynomial({c}); }

  double operator()(double x) const;
  int degree() const;
  bool empty() const { return pieces_.empty(); }
  // true if the polynomial has a single piece (breaks fixed by the edge)
  bool single_piece() const { return breaks_.empty(); }

  // Bind the breaks of a single-piece polynomial to [0, length].
  void bind(double length);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<double>>& pieces() const { return pieces_; }

  double min_on(double a, double b) const;
  double max_on(double a, double b) const;

  bool operator==(const PiecewisePolynomial&) const = default;

private:
  std::vector<double> breaks_;
  std::vector<std::vector<double>> pieces_;
};

// Scalar function of time with an exact derivative.
class TimeProfile {
public:
  enum class Kind { poly, sin, cos, exp };
  struct Term {
    Kind kind = Kind::poly;
    std::vector<double> coeffs;  // poly
    double amp = 0.0, omega = 0.0, phase = 0.0;  // sin/cos: amp*sin(omega t + phase); exp: amp*exp(omega t)
    bool operator==(const Term&) const = default;
  };

  TimeProfile() = default;
  static TimeProfile constant(double c);
  static TimeProfile polynomial(std::vector<double> coeffs);
  static TimeProfile sine(double amp, double omega, double phase = 0.0);
  static TimeProfile cosine(double amp, double omega, double phase = 0.0);
  static TimeProfile exponential(double amp, double rate);

  TimeProfile& add(Term t);

  double value(double t) const;
  double derivative(double t) const;
  bool is_zero() const;

  const std::vector<Term>& terms() const { return terms_; }
  bool operator==(const TimeProfile&) const = default;

private:
  std::vector<Term> terms_;
};

// sum_k time_k(t) * profile_k(x) on one edge
struct SpaceTimeField {
  struct Term {
    TimeProfile time;
    PiecewisePolynomial profile;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;
  bool operator==(const SpaceTimeField&) const = default;
};

enum class VertexKind { dirichlet, flux };

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::flux;
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  std::string id;
  int tail = -1;
  int head = -1;
  double length = 1.0;
  PiecewisePolynomial a = PiecewisePolynomial::constant(0.0);
  PiecewisePolynomial d = PiecewisePolynomial::constant(1.0);
  bool operator==(const Edge&) const = default;
};

struct NetworkSpec {
  struct VertexSpec {
    std::string id;
    VertexKind kind = VertexKind::flux;
  };
  struct EdgeSpec {
    std::string id, tail, head;
    double length = 1.0;
    PiecewisePolynomial a = PiecewisePolynomial::constant(0.0);
    PiecewisePolynomial d = PiecewisePolynomial::constant(1.0);
  };
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
};

class Network {
public:
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  // indices into vertices(), in vertex order
  const std::vector<int>& dirichlet_vertices() const { return dirichlet_; }
  const std::vector<int>& flux_vertices() const { return flux_; }
  // edges incident to v
  const std::vector<int>& incident_edges(int v) const { return incident_[v]; }

  double d_min() const;
  double a_max() const;

  bool operator==(const Network& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

private:
  friend Network build_network(const NetworkSpec& spec);
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<int> dirichlet_, flux_;
  std::vector<std::vector<int>> incident_;
  std::map<std::string, int> vertex_ids_, edge_ids_;
};

Network build_network(const NetworkSpec& spec);

// -1 at the tail, +1 at the head
int incidence_sign(const Network& net, int e, int v);
int incidence_sign(const Network& net, const std::string& e, const std::string& v);

NetworkSpec to_spec(const Network& net);

// Right-hand sides. f, g indexed by edge; h by Dirichlet vertex; r by flux vertex.
// Missing entries are zero.
struct BoundaryAndSourceData {
  std::map<int, SpaceTimeField> f, g;
  std::map<int, TimeProfile> h, r;
};

}  // namespace netpdae
