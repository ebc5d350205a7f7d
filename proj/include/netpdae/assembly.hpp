#pragma once

#include "netpdae/network.hpp"
#include "netpdae/sparse.hpp"

#include <functional>
#include <vector>

namespace netpdae {

struct MeshParams {
  std::vector<int> elements;  // one entry per edge, or a single entry used for every edge

  static MeshParams uniform(int n) { return MeshParams{{n}}; }
  int elements_on(int edge) const;
};

struct AssembledSystem {
  SparseMatrix M1, M2, Md, Ma, K, B, C;
  int n_p = 0, n_m = 0, n_dirichlet = 0, n_flux = 0;

  // per edge: element count, mesh size, first flux dof
  std::vector<int> elements;
  std::vector<double> h;
  std::vector<int> first_flux;
  // potential dof of node i = 0..elements[e] on edge e (node 0 is the tail)
  std::vector<std::vector<int>> node_dof;

  int flux_dof(int edge, int element) const { return first_flux[edge] + element; }
  int potential_dof(int edge, int node) const { return node_dof[edge][node]; }
  // local coordinate of node i on edge e
  double node_x(int edge, int node) const { return node * h[edge]; }
};

AssembledSystem assemble(const Network& net, const MeshParams& mesh);

// Time-dependent right-hand sides in dof space.
class LoadEvaluator {
public:
  LoadEvaluator(const Network& net, const AssembledSystem& sys, const BoundaryAndSourceData& data);

  Vector F(double t) const;
  Vector F_dot(double t) const;
  // g - C^T r
  Vector G(double t) const;
  Vector H(double t) const;
  Vector H_dot(double t) const;
  Vector R(double t) const;

private:
  struct Term {
    TimeProfile time;
    Vector vec;
  };
  std::vector<Term> f_, g_;
  std::vector<TimeProfile> h_, r_;
  SparseMatrix Ct_;
  int n_p_ = 0, n_m_ = 0;
};

// integral of fn over [a,b], exact for polynomials up to degree 19 on each
// sub-interval between consecutive split points
double integrate(const std::function<double(double)>& fn, double a, double b, const std::vector<double>& splits = {});

// nodal interpolation; throws if edge values disagree at a shared vertex
Vector interpolate_potential(const Network& net, const AssembledSystem& sys,
                             const std::function<double(int edge, double x)>& p);
// L2 projection onto elementwise constants, given the exact integral over [xa, xb]
Vector project_flux(const AssembledSystem& sys, const std::function<double(int edge, double xa, double xb)>& integral);

// m solving M_d m = f_vec - K p_vec
Vector consistent_initial_flux(const AssembledSystem& sys, const Vector& p_vec, const Vector& f_vec);

struct ConsistencyReport {
  bool m_matches_m0 = false;
  double flux_residual = 0.0;        // max |K p + M_d m - f|
  double dirichlet_residual = 0.0;   // max |B p - h|
  double kirchhoff_residual = 0.0;   // max |C K^T m - r|
};

ConsistencyReport check_consistency(const AssembledSystem& sys, const Vector& p_vec, const Vector& m_vec,
                                    const Vector& f_vec, const Vector& h_vec, const Vector& r_vec);

struct Index2Report {
  bool pass = false;
  int rank_B = 0;
  double sigma_min_BM2B = 0.0;       // smallest singular value of B M2^-1 B^T
  double sigma_min_step = 0.0;       // smallest singular value of the one-differentiation matrix (eps > 0)
  double lambda_min_MdM1Md = 0.0;    // coupled system block
  std::string message;
};

Index2Report verify_index2(const AssembledSystem& sys, double eps);

}  // namespace netpdae
