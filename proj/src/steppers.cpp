#include "netpdae/steppers.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace netpdae {

TimeGrid::TimeGrid(double T_, int n_) : T(T_), n(n_) {
  if (!(T_ > 0.0)) throw std::invalid_argument("time grid: T must be positive");
  if (n_ < 1) throw std::invalid_argument("time grid: need at least one step");
}

std::string field_name(Field f) {
  switch (f) {
    case Field::p0: return "p0";
    case Field::m0: return "m0";
    case Field::p1: return "p1";
    case Field::m1: return "m1";
    case Field::p: return "p";
    case Field::m: return "m";
    case Field::lambda: return "lambda";
    case Field::mu: return "mu";
    case Field::lambda1: return "lambda1";
  }
  return "?";
}

const Eigen::MatrixXd& Trajectory::at(Field f) const {
  auto it = data.find(f);
  if (it == data.end()) throw std::invalid_argument("trajectory has no field '" + field_name(f) + "'");
  return it->second;
}

namespace {

void check_stride(const TimeGrid& grid, int stride) {
  if (stride < 1 || grid.n % stride != 0) throw std::invalid_argument("stride must divide the number of steps");
}

}  // namespace

Eigen::MatrixXd integrate_euler(const DaeForm& form, const Vector& y0, const TimeGrid& grid, int stride,
                                const StepObserver& observe) {
  check_stride(grid, stride);
  const double tau = grid.tau();
  Factorization lu = factorize(form.E * (1.0 / tau) + form.J);
  Eigen::MatrixXd out(form.size(), grid.n / stride + 1);
  out.col(0) = y0;
  Vector y = y0, prev;
  for (int j = 1; j <= grid.n; ++j) {
    prev = y;
    y = lu.solve(form.rhs(grid.t(j)) + form.E * prev / tau);
    if (observe) observe(j, prev, y);
    if (j % stride == 0) out.col(j / stride) = y;
  }
  return out;
}

Eigen::MatrixXd integrate_rk(const DaeForm& form, const Vector& y0, const TimeGrid& grid, const ButcherTableau& tab,
                             int stride, const StepObserver& observe) {
  check_stride(grid, stride);
  const double tau = grid.tau();
  const int s = tab.stages(), n = form.size();
  const Eigen::MatrixXd& W = tab.A_inv();
  const Eigen::VectorXd wsum = W.rowwise().sum();
  SparseMatrix step = kron(W, form.E) * (1.0 / tau) + kron(Eigen::MatrixXd::Identity(s, s), form.J);
  Factorization lu = factorize(step);
  Eigen::MatrixXd out(n, grid.n / stride + 1);
  out.col(0) = y0;
  Vector y = y0, prev, rhs(static_cast<Eigen::Index>(s) * n);
  for (int j = 1; j <= grid.n; ++j) {
    prev = y;
    const double t0 = grid.t(j - 1);
    Vector Ey = form.E * prev / tau;
    for (int i = 0; i < s; ++i) rhs.segment(i * n, n) = form.rhs(t0 + tab.c()[i] * tau) + wsum[i] * Ey;
    Vector Y = lu.solve(rhs);
    y.setZero();
    for (int i = 0; i < s; ++i) y += tab.weights()[i] * Y.segment(i * n, n);
    if (observe) observe(j, prev, y);
    if (j % stride == 0) out.col(j / stride) = y;
  }
  return out;
}

namespace {

// diag(M1) ./ diag(Md)
Vector m1_over_md(const AssembledSystem& sys) {
  Vector v(sys.n_m);
  for (int i = 0; i < sys.n_m; ++i) v[i] = sys.M1.coeff(i, i) / sys.Md.coeff(i, i);
  return v;
}

// Solve [[M2, B^T], [B, 0]] [q; lambda] = [rhs; hdot].
std::pair<Vector, Vector> saddle_velocity(const AssembledSystem& sys, const Vector& rhs, const Vector& hdot) {
  SparseMatrix Bt = sys.B.transpose();
  SparseMatrix S = block_matrix({{&sys.M2, &Bt}, {&sys.B, nullptr}}, {sys.n_p, sys.n_dirichlet},
                                {sys.n_p, sys.n_dirichlet});
  Vector b(sys.n_p + sys.n_dirichlet);
  b << rhs, hdot;
  Vector x = factorize(S).solve(b);
  return {x.head(sys.n_p), x.tail(sys.n_dirichlet)};
}

void check_initial_potential(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p) {
  if (p.size() != sys.n_p) throw std::invalid_argument("initial potential has wrong dimension");
  Vector h0 = loads.H(0.0);
  Vector res = sys.B * p - h0;
  double scale = std::max(1.0, h0.size() ? h0.cwiseAbs().maxCoeff() : 0.0);
  if (res.size() && res.cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("inconsistent initial data: B p(0) != h(0)");
}

double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

struct Offsets {
  std::map<Field, std::pair<int, int>> at;
  Offsets(const DaeForm& f) {
    int o = 0;
    for (auto [field, size] : f.layout) {
      at[field] = {o, size};
      o += size;
    }
  }
  auto seg(Field f, const Vector& y) const { return y.segment(at.at(f).first, at.at(f).second); }
};

Trajectory unpack(const DaeForm& form, const Eigen::MatrixXd& ys, const TimeGrid& grid, int stride, std::string scheme) {
  Trajectory tr;
  tr.scheme = std::move(scheme);
  tr.grid = grid;
  tr.stride = stride;
  for (int k = 0; k < ys.cols(); ++k) tr.times.push_back(grid.t(k * stride));
  int o = 0;
  for (auto [field, size] : form.layout) {
    tr.data[field] = ys.middleRows(o, size);
    o += size;
  }
  return tr;
}

// stage-weighted data: sum_i w_i h(t_{j-1} + c_i tau)
struct StageWeights {
  Eigen::RowVectorXd w, b;
  Eigen::VectorXd c;
  Vector h(const LoadEvaluator& l, double t0, double tau) const {
    Vector v = Vector::Zero(l.H(t0).size());
    for (int i = 0; i < c.size(); ++i) v += w[i] * l.H(t0 + c[i] * tau);
    return v;
  }
  Vector hdot(const LoadEvaluator& l, double t0, double tau) const {
    Vector v = Vector::Zero(l.H(t0).size());
    for (int i = 0; i < c.size(); ++i) v += b[i] * l.H_dot(t0 + c[i] * tau);
    return v;
  }
};

StageWeights euler_weights() {
  return {Eigen::RowVectorXd::Ones(1), Eigen::RowVectorXd::Ones(1), Eigen::VectorXd::Ones(1)};
}

StageWeights rk_weights(const ButcherTableau& tab) { return {tab.weights(), tab.b().transpose(), tab.c()}; }

Vector parabolic_initial(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0) {
  check_initial_potential(sys, loads, p0);
  Vector m0 = consistent_initial_flux(sys, p0, loads.F(0.0));
  auto [q, lambda] = saddle_velocity(sys, loads.G(0.0) - sys.Ma * p0 + sys.K.transpose() * m0, loads.H_dot(0.0));
  Vector y(sys.n_p + sys.n_m + 2 * sys.n_dirichlet);
  y << p0, m0, lambda, Vector::Zero(sys.n_dirichlet);
  return y;
}

Vector coupled_initial(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0) {
  check_initial_potential(sys, loads, p0);
  Vector m0 = consistent_initial_flux(sys, p0, loads.F(0.0));
  auto [q, lambda] = saddle_velocity(sys, loads.G(0.0) - sys.Ma * p0 + sys.K.transpose() * m0, loads.H_dot(0.0));
  Vector r = m1_over_md(sys);
  Vector kq = sys.K * q;
  Vector fd = loads.F_dot(0.0);
  Vector m1(sys.n_m);
  for (int i = 0; i < sys.n_m; ++i) m1[i] = r[i] * (kq[i] - fd[i]) / sys.Md.coeff(i, i);
  auto [q1, lambda1] = saddle_velocity(sys, sys.K.transpose() * m1, Vector::Zero(sys.n_dirichlet));
  Vector y(2 * sys.n_p + 2 * sys.n_m + 3 * sys.n_dirichlet);
  y << p0, Vector::Zero(sys.n_p), m0, m1, lambda, Vector::Zero(sys.n_dirichlet), lambda1;
  return y;
}

Trajectory run_parabolic(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0,
                         const TimeGrid& grid, const ButcherTableau* tab, const SolveOptions& opts) {
  DaeForm form = parabolic_form(sys, loads);
  Offsets off(form);
  StageWeights sw = tab ? rk_weights(*tab) : euler_weights();
  double res = 0.0;
  auto observe = [&](int j, const Vector& prev, const Vector& y) {
    const double tau = grid.tau(), t0 = grid.t(j - 1);
    Vector p = off.seg(Field::p0, y), pp = off.seg(Field::p0, prev);
    res = std::max(res, max_abs(sys.B * p - off.seg(Field::mu, y) - sw.h(loads, t0, tau)));
    res = std::max(res, max_abs(sys.B * (p - pp) / tau - sw.hdot(loads, t0, tau)));
  };
  Vector y0 = parabolic_initial(sys, loads, p0);
  Eigen::MatrixXd ys = tab ? integrate_rk(form, y0, grid, *tab, opts.stride, observe)
                           : integrate_euler(form, y0, grid, opts.stride, observe);
  Trajectory tr = unpack(form, ys, grid, opts.stride, tab ? "parabolic-" + tab->name() : "parabolic-euler");
  tr.max_constraint_residual = res;
  return tr;
}

Trajectory run_coupled(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0, const TimeGrid& grid,
                       const ButcherTableau* tab, const SolveOptions& opts) {
  DaeForm form = coupled_form(sys, loads);
  Offsets off(form);
  StageWeights sw = tab ? rk_weights(*tab) : euler_weights();
  double res = 0.0;
  auto observe = [&](int j, const Vector& prev, const Vector& y) {
    const double tau = grid.tau(), t0 = grid.t(j - 1);
    Vector p = off.seg(Field::p0, y), pp = off.seg(Field::p0, prev);
    res = std::max(res, max_abs(sys.B * p - off.seg(Field::mu, y) - sw.h(loads, t0, tau)));
    res = std::max(res, max_abs(sys.B * (p - pp) / tau - sw.hdot(loads, t0, tau)));
    res = std::max(res, max_abs(sys.B * Vector(off.seg(Field::p1, y))));
  };
  Vector y0 = coupled_initial(sys, loads, p0);
  Eigen::MatrixXd ys = tab ? integrate_rk(form, y0, grid, *tab, opts.stride, observe)
                           : integrate_euler(form, y0, grid, opts.stride, observe);
  Trajectory tr = unpack(form, ys, grid, opts.stride, tab ? "coupled-" + tab->name() : "coupled-euler");
  tr.max_constraint_residual = res;
  return tr;
}

}  // namespace

DaeForm parabolic_form(const AssembledSystem& sys, const LoadEvaluator& loads) {
  const int np = sys.n_p, nm = sys.n_m, nb = sys.n_dirichlet;
  SparseMatrix Kt = sys.K.transpose(), mKt = -Kt, Bt = sys.B.transpose(), I = -SparseMatrix::identity(nb);
  DaeForm f;
  f.layout = {{Field::p0, np}, {Field::m0, nm}, {Field::lambda, nb}, {Field::mu, nb}};
  std::vector<int> sz{np, nm, nb, nb};
  f.E = block_matrix({{&sys.M2, nullptr, nullptr, nullptr},
                      {nullptr, nullptr, nullptr, nullptr},
                      {nullptr, nullptr, nullptr, nullptr},
                      {&sys.B, nullptr, nullptr, nullptr}},
                     sz, sz);
  f.J = block_matrix({{&sys.Ma, &mKt, &Bt, &Bt},
                      {&sys.K, &sys.Md, nullptr, nullptr},
                      {&sys.B, nullptr, nullptr, &I},
                      {nullptr, nullptr, nullptr, nullptr}},
                     sz, sz);
  f.rhs = [&loads, np, nm, nb](double t) {
    Vector r(np + nm + 2 * nb);
    r << loads.G(t), loads.F(t), loads.H(t), loads.H_dot(t);
    return r;
  };
  return f;
}

DaeForm coupled_form(const AssembledSystem& sys, const LoadEvaluator& loads) {
  const int np = sys.n_p, nm = sys.n_m, nb = sys.n_dirichlet;
  SparseMatrix Kt = sys.K.transpose(), mKt = -Kt, Bt = sys.B.transpose(), I = -SparseMatrix::identity(nb);
  Vector r = m1_over_md(sys);
  SparseMatrix R = SparseMatrix::diagonal(r);
  SparseMatrix mKd = -(R * sys.K);
  DaeForm f;
  // y = [p0, p1, m0, m1, lambda0, mu0, lambda1]
  f.layout = {{Field::p0, np}, {Field::p1, np}, {Field::m0, nm}, {Field::m1, nm},
              {Field::lambda, nb}, {Field::mu, nb}, {Field::lambda1, nb}};
  std::vector<int> cols{np, np, nm, nm, nb, nb, nb};
  const SparseMatrix* z = nullptr;
  // row order: (a) p0, (b) p1, (c) m1, (d) m0, (e) B p0 - mu, (f) B p0', (g) B p1
  f.E = block_matrix({{&sys.M2, z, z, z, z, z, z},
                      {z, &sys.M2, z, z, z, z, z},
                      {&mKd, z, z, z, z, z, z},
                      {z, z, z, z, z, z, z},
                      {z, z, z, z, z, z, z},
                      {&sys.B, z, z, z, z, z, z},
                      {z, z, z, z, z, z, z}},
                     {np, np, nm, nm, nb, nb, nb}, cols);
  f.J = block_matrix({{&sys.Ma, z, &mKt, z, &Bt, &Bt, z},
                      {z, &sys.Ma, z, &mKt, z, z, &Bt},
                      {z, &sys.K, z, &sys.Md, z, z, z},
                      {&sys.K, z, &sys.Md, z, z, z, z},
                      {&sys.B, z, z, z, z, &I, z},
                      {z, z, z, z, z, z, z},
                      {z, &sys.B, z, z, z, z, z}},
                     {np, np, nm, nm, nb, nb, nb}, cols);
  f.rhs = [&loads, r, np, nm, nb](double t) {
    Vector v(2 * np + 2 * nm + 3 * nb);
    v << loads.G(t), Vector::Zero(np), -(r.cwiseProduct(loads.F_dot(t))), loads.F(t), loads.H(t), loads.H_dot(t),
        Vector::Zero(nb);
    return v;
  };
  return f;
}

DaeForm hyperbolic_form(const AssembledSystem& sys, const LoadEvaluator& loads, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("hyperbolic solver needs eps > 0");
  const int np = sys.n_p, nm = sys.n_m, nb = sys.n_dirichlet;
  SparseMatrix Kt = sys.K.transpose(), mKt = -Kt, Bt = sys.B.transpose(), eM1 = sys.M1 * eps;
  DaeForm f;
  f.layout = {{Field::p, np}, {Field::m, nm}, {Field::lambda, nb}};
  std::vector<int> sz{np, nm, nb};
  f.E = block_matrix({{&sys.M2, nullptr, nullptr}, {nullptr, &eM1, nullptr}, {nullptr, nullptr, nullptr}}, sz, sz);
  f.J = block_matrix({{&sys.Ma, &mKt, &Bt}, {&sys.K, &sys.Md, nullptr}, {&sys.B, nullptr, nullptr}}, sz, sz);
  f.rhs = [&loads, np, nm, nb](double t) {
    Vector r(np + nm + nb);
    r << loads.G(t), loads.F(t), loads.H(t);
    return r;
  };
  return f;
}

Trajectory solve_parabolic_euler(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                                 const TimeGrid& grid, const SolveOptions& opts) {
  return run_parabolic(sys, loads, p0_init, grid, nullptr, opts);
}

Trajectory solve_parabolic_rk(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                              const TimeGrid& grid, const ButcherTableau& tab, const SolveOptions& opts) {
  return run_parabolic(sys, loads, p0_init, grid, &tab, opts);
}

Trajectory solve_coupled_euler(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                               const TimeGrid& grid, const SolveOptions& opts) {
  return run_coupled(sys, loads, p0_init, grid, nullptr, opts);
}

Trajectory solve_coupled_rk(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p0_init,
                            const TimeGrid& grid, const ButcherTableau& tab, const SolveOptions& opts) {
  return run_coupled(sys, loads, p0_init, grid, &tab, opts);
}

Trajectory solve_hyperbolic_reference(const AssembledSystem& sys, const LoadEvaluator& loads, const Vector& p_init,
                                      const Vector& m_init, const TimeGrid& grid, const ButcherTableau& tab, double eps,
                                      const SolveOptions& opts) {
  DaeForm form = hyperbolic_form(sys, loads, eps);
  check_initial_potential(sys, loads, p_init);
  if (m_init.size() != sys.n_m) throw std::invalid_argument("initial flux has wrong dimension");
  auto [q, lambda] =
      saddle_velocity(sys, loads.G(0.0) - sys.Ma * p_init + sys.K.transpose() * m_init, loads.H_dot(0.0));
  Vector y0(form.size());
  y0 << p_init, m_init, lambda;
  Offsets off(form);
  StageWeights sw = rk_weights(tab);
  double res = 0.0;
  auto observe = [&](int j, const Vector&, const Vector& y) {
    res = std::max(res, max_abs(sys.B * Vector(off.seg(Field::p, y)) - sw.h(loads, grid.t(j - 1), grid.tau())));
  };
  Eigen::MatrixXd ys = integrate_rk(form, y0, grid, tab, opts.stride, observe);
  Trajectory tr = unpack(form, ys, grid, opts.stride, "hyperbolic-" + tab.name());
  tr.max_constraint_residual = res;
  return tr;
}

double hamiltonian(const AssembledSystem& sys, const Vector& p_vec, const Vector& m_vec, double eps) {
  return 0.5 * eps * m_vec.dot(sys.M1 * m_vec) + 0.5 * p_vec.dot(sys.M2 * p_vec);
}

}  // namespace netpdae
