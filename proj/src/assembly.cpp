#include "netpdae/assembly.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netpdae {

int MeshParams::elements_on(int edge) const {
  if (elements.empty()) throw std::invalid_argument("mesh: no element counts given");
  int n = elements.size() == 1 ? elements[0] : elements.at(static_cast<std::size_t>(edge));
  if (n < 1) throw std::invalid_argument("mesh: need at least one element per edge");
  return n;
}

double integrate(const std::function<double(double)>& fn, double a, double b, const std::vector<double>& splits) {
  std::vector<double> pts{a};
  for (double s : splits)
    if (s > a && s < b) pts.push_back(s);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    sum += boost::math::quadrature::gauss<double, 10>::integrate(fn, pts[k], pts[k + 1]);
  return sum;
}

AssembledSystem assemble(const Network& net, const MeshParams& mesh) {
  AssembledSystem s;
  const int nv = net.num_vertices(), ne = net.num_edges();
  s.elements.resize(ne);
  s.h.resize(ne);
  s.first_flux.resize(ne);
  s.node_dof.resize(ne);

  int np = nv, nm = 0;
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = net.edges()[e];
    int n = mesh.elements_on(e);
    s.elements[e] = n;
    s.h[e] = edge.length / n;
    s.first_flux[e] = nm;
    nm += n;
    auto& nd = s.node_dof[e];
    nd.resize(static_cast<std::size_t>(n) + 1);
    nd[0] = edge.tail;
    for (int i = 1; i < n; ++i) nd[i] = np++;
    nd[n] = edge.head;
  }
  s.n_p = np;
  s.n_m = nm;

  std::vector<Triplet> m1, m2, md, ma, k;
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = net.edges()[e];
    const double h = s.h[e];
    for (int i = 0; i < s.elements[e]; ++i) {
      const double x0 = i * h, x1 = (i + 1) * h;
      const int row = s.flux_dof(e, i);
      const int l = s.node_dof[e][i], r = s.node_dof[e][i + 1];
      m1.push_back({row, row, h});
      md.push_back({row, row, integrate([&](double x) { return edge.d(x); }, x0, x1, edge.d.breaks())});
      k.push_back({row, l, -1.0});
      k.push_back({row, r, 1.0});

      m2.push_back({l, l, h / 3.0});
      m2.push_back({r, r, h / 3.0});
      m2.push_back({l, r, h / 6.0});
      m2.push_back({r, l, h / 6.0});

      auto phi_l = [&](double x) { return (x1 - x) / h; };
      auto phi_r = [&](double x) { return (x - x0) / h; };
      double all = integrate([&](double x) { return edge.a(x) * phi_l(x) * phi_l(x); }, x0, x1, edge.a.breaks());
      double arr = integrate([&](double x) { return edge.a(x) * phi_r(x) * phi_r(x); }, x0, x1, edge.a.breaks());
      double alr = integrate([&](double x) { return edge.a(x) * phi_l(x) * phi_r(x); }, x0, x1, edge.a.breaks());
      ma.push_back({l, l, all});
      ma.push_back({r, r, arr});
      ma.push_back({l, r, alr});
      ma.push_back({r, l, alr});
    }
  }
  s.M1 = SparseMatrix::from_triplets(nm, nm, std::move(m1));
  s.Md = SparseMatrix::from_triplets(nm, nm, std::move(md));
  s.M2 = SparseMatrix::from_triplets(np, np, std::move(m2));
  s.Ma = SparseMatrix::from_triplets(np, np, std::move(ma));
  s.K = SparseMatrix::from_triplets(nm, np, std::move(k));

  std::vector<Triplet> b, c;
  const auto& dv = net.dirichlet_vertices();
  const auto& fv = net.flux_vertices();
  for (std::size_t i = 0; i < dv.size(); ++i) b.push_back({static_cast<int>(i), dv[i], 1.0});
  for (std::size_t i = 0; i < fv.size(); ++i) c.push_back({static_cast<int>(i), fv[i], 1.0});
  s.n_dirichlet = static_cast<int>(dv.size());
  s.n_flux = static_cast<int>(fv.size());
  s.B = SparseMatrix::from_triplets(s.n_dirichlet, np, std::move(b));
  s.C = SparseMatrix::from_triplets(s.n_flux, np, std::move(c));
  return s;
}

LoadEvaluator::LoadEvaluator(const Network& net, const AssembledSystem& sys, const BoundaryAndSourceData& data)
    : Ct_(sys.C.transpose()), n_p_(sys.n_p), n_m_(sys.n_m) {
  for (const auto& [e, field] : data.f) {
    if (e < 0 || e >= net.num_edges()) throw std::invalid_argument("source f given on unknown edge");
    for (const auto& term : field.terms) {
      PiecewisePolynomial prof = term.profile;
      prof.bind(net.edges()[e].length);
      Vector v = Vector::Zero(n_m_);
      const double h = sys.h[e];
      for (int i = 0; i < sys.elements[e]; ++i)
        v[sys.flux_dof(e, i)] = integrate([&](double x) { return prof(x); }, i * h, (i + 1) * h, prof.breaks());
      f_.push_back({term.time, std::move(v)});
    }
  }
  for (const auto& [e, field] : data.g) {
    if (e < 0 || e >= net.num_edges()) throw std::invalid_argument("source g given on unknown edge");
    for (const auto& term : field.terms) {
      PiecewisePolynomial prof = term.profile;
      prof.bind(net.edges()[e].length);
      Vector v = Vector::Zero(n_p_);
      const double h = sys.h[e];
      for (int i = 0; i < sys.elements[e]; ++i) {
        const double x0 = i * h, x1 = (i + 1) * h;
        v[sys.node_dof[e][i]] += integrate([&](double x) { return prof(x) * (x1 - x) / h; }, x0, x1, prof.breaks());
        v[sys.node_dof[e][i + 1]] += integrate([&](double x) { return prof(x) * (x - x0) / h; }, x0, x1, prof.breaks());
      }
      g_.push_back({term.time, std::move(v)});
    }
  }
  const auto& dv = net.dirichlet_vertices();
  const auto& fv = net.flux_vertices();
  h_.resize(dv.size());
  r_.resize(fv.size());
  for (const auto& [v, prof] : data.h) {
    auto it = std::find(dv.begin(), dv.end(), v);
    if (it == dv.end()) throw std::invalid_argument("dirichlet data h given on a non-dirichlet vertex");
    h_[static_cast<std::size_t>(it - dv.begin())] = prof;
  }
  for (const auto& [v, prof] : data.r) {
    auto it = std::find(fv.begin(), fv.end(), v);
    if (it == fv.end()) throw std::invalid_argument("coupling data r given on a non-flux vertex");
    r_[static_cast<std::size_t>(it - fv.begin())] = prof;
  }
}

Vector LoadEvaluator::F(double t) const {
  Vector v = Vector::Zero(n_m_);
  for (const auto& term : f_) v += term.time.value(t) * term.vec;
  return v;
}

Vector LoadEvaluator::F_dot(double t) const {
  Vector v = Vector::Zero(n_m_);
  for (const auto& term : f_) v += term.time.derivative(t) * term.vec;
  return v;
}

Vector LoadEvaluator::G(double t) const {
  Vector v = Vector::Zero(n_p_);
  for (const auto& term : g_) v += term.time.value(t) * term.vec;
  return v - Ct_ * R(t);
}

Vector LoadEvaluator::H(double t) const {
  Vector v(static_cast<Eigen::Index>(h_.size()));
  for (std::size_t i = 0; i < h_.size(); ++i) v[static_cast<Eigen::Index>(i)] = h_[i].value(t);
  return v;
}

Vector LoadEvaluator::H_dot(double t) const {
  Vector v(static_cast<Eigen::Index>(h_.size()));
  for (std::size_t i = 0; i < h_.size(); ++i) v[static_cast<Eigen::Index>(i)] = h_[i].derivative(t);
  return v;
}

Vector LoadEvaluator::R(double t) const {
  Vector v(static_cast<Eigen::Index>(r_.size()));
  for (std::size_t i = 0; i < r_.size(); ++i) v[static_cast<Eigen::Index>(i)] = r_[i].value(t);
  return v;
}

Vector interpolate_potential(const Network& net, const AssembledSystem& sys,
                             const std::function<double(int edge, double x)>& p) {
  Vector v = Vector::Zero(sys.n_p);
  std::vector<bool> seen(static_cast<std::size_t>(sys.n_p), false);
  for (int e = 0; e < net.num_edges(); ++e) {
    for (int i = 0; i <= sys.elements[e]; ++i) {
      int dof = sys.node_dof[e][i];
      double val = p(e, sys.node_x(e, i));
      if (seen[dof]) {
        if (std::abs(v[dof] - val) > 1e-12 * std::max(1.0, std::abs(val)))
          throw std::invalid_argument("initial potential is discontinuous at vertex '" +
                                      net.vertices()[dof].id + "'");
      } else {
        v[dof] = val;
        seen[dof] = true;
      }
    }
  }
  return v;
}

Vector project_flux(const AssembledSystem& sys, const std::function<double(int edge, double xa, double xb)>& integral) {
  Vector v = Vector::Zero(sys.n_m);
  for (std::size_t e = 0; e < sys.elements.size(); ++e) {
    const double h = sys.h[e];
    for (int i = 0; i < sys.elements[e]; ++i)
      v[sys.flux_dof(static_cast<int>(e), i)] = integral(static_cast<int>(e), i * h, (i + 1) * h) / h;
  }
  return v;
}

Vector consistent_initial_flux(const AssembledSystem& sys, const Vector& p_vec, const Vector& f_vec) {
  if (p_vec.size() != sys.n_p || f_vec.size() != sys.n_m)
    throw std::invalid_argument("consistent_initial_flux: dimension mismatch");
  Vector rhs = f_vec - sys.K * p_vec;
  Vector m(sys.n_m);
  // M_d is diagonal for elementwise constant fluxes
  for (int i = 0; i < sys.n_m; ++i) {
    double d = sys.Md.coeff(i, i);
    if (!(d > 0.0)) throw std::runtime_error("consistent_initial_flux: singular M_d");
    m[i] = rhs[i] / d;
  }
  return m;
}

ConsistencyReport check_consistency(const AssembledSystem& sys, const Vector& p_vec, const Vector& m_vec,
                                    const Vector& f_vec, const Vector& h_vec, const Vector& r_vec) {
  ConsistencyReport rep;
  Vector res = sys.K * p_vec + sys.Md * m_vec - f_vec;
  rep.flux_residual = res.size() ? res.cwiseAbs().maxCoeff() : 0.0;
  Vector bres = sys.B * p_vec - h_vec;
  rep.dirichlet_residual = bres.size() ? bres.cwiseAbs().maxCoeff() : 0.0;
  Vector kres = sys.C * (sys.K.transpose() * m_vec) - r_vec;
  rep.kirchhoff_residual = kres.size() ? kres.cwiseAbs().maxCoeff() : 0.0;
  double scale = std::max(1.0, f_vec.size() ? f_vec.cwiseAbs().maxCoeff() : 0.0);
  rep.m_matches_m0 = rep.flux_residual < 1e-12 * scale;
  return rep;
}

Index2Report verify_index2(const AssembledSystem& sys, double eps) {
  Index2Report rep;
  const int nb = sys.B.rows();
  rep.rank_B = row_rank(sys.B);
  Eigen::MatrixXd M2 = sys.M2.to_dense();
  Eigen::MatrixXd B = sys.B.to_dense();
  Eigen::LLT<Eigen::MatrixXd> m2(M2);
  Eigen::MatrixXd S = B * m2.solve(B.transpose());
  rep.sigma_min_BM2B = nb ? Eigen::JacobiSVD<Eigen::MatrixXd>(S).singularValues().minCoeff() : 0.0;

  Eigen::VectorXd md = sys.Md.to_dense().diagonal();
  Eigen::VectorXd m1 = sys.M1.to_dense().diagonal();
  rep.lambda_min_MdM1Md = (md.array().square() / m1.array()).minCoeff();

  bool ok = rep.rank_B == nb && rep.sigma_min_BM2B > 1e-12 * std::max(1.0, S.norm()) && rep.lambda_min_MdM1Md > 0.0;
  if (eps > 0.0) {
    const int n = sys.n_m + sys.n_p + nb;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    J.topLeftCorner(sys.n_m, sys.n_m) = eps * sys.M1.to_dense();
    J.block(sys.n_m, sys.n_m, sys.n_p, sys.n_p) = M2;
    J.block(sys.n_m, sys.n_m + sys.n_p, sys.n_p, nb) = B.transpose();
    J.block(sys.n_m + sys.n_p, sys.n_m, nb, sys.n_p) = B;
    rep.sigma_min_step = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues().minCoeff();
    ok = ok && rep.sigma_min_step > 1e-12 * J.norm();
  }
  rep.pass = ok;
  if (rep.rank_B < nb)
    rep.message = "B is rank deficient by " + std::to_string(nb - rep.rank_B);
  else if (!ok)
    rep.message = "singular constraint coupling";
  else
    rep.message = "index-2 structure verified";
  return rep;
}

}  // namespace netpdae
