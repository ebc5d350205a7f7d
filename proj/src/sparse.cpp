#include "netpdae/sparse.hpp"

#include <Eigen/QR>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/SparseExtra>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netpdae {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  for (const auto& t : entries)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("sparse triplet outside matrix bounds");
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  SparseMatrix m(rows, cols);
  std::size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    while (k < entries.size() && entries[k].row == r) {
      int c = entries[k].col;
      double v = 0.0;
      while (k < entries.size() && entries[k].row == r && entries[k].col == c) v += entries[k++].value;
      if (v != 0.0) {
        m.indices_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.offsets_[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.values_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::diagonal(const Vector& d) {
  std::vector<Triplet> t;
  for (int i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(static_cast<int>(d.size()), static_cast<int>(d.size()), std::move(t));
}

SparseMatrix SparseMatrix::from_eigen(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m) {
  std::vector<Triplet> t;
  for (int r = 0; r < m.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, r); it; ++it)
      t.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
  return from_triplets(static_cast<int>(m.rows()), static_cast<int>(m.cols()), std::move(t));
}

SparseMatrix SparseMatrix::from_dense(const Eigen::MatrixXd& m) {
  std::vector<Triplet> t;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0.0) t.push_back({r, c, m(r, c)});
  return from_triplets(static_cast<int>(m.rows()), static_cast<int>(m.cols()), std::move(t));
}

double SparseMatrix::coeff(int r, int c) const {
  auto b = indices_.begin() + offsets_[r], e = indices_.begin() + offsets_[r + 1];
  auto it = std::lower_bound(b, e, c);
  return (it != e && *it == c) ? values_[static_cast<std::size_t>(it - indices_.begin())] : 0.0;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Vector SparseMatrix::operator*(const Vector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("sparse matvec: dimension mismatch");
  Vector y = Vector::Zero(rows_);
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) s += values_[k] * x[indices_[k]];
    y[r] = s;
  }
  return y;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < rows_; ++r)
    for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) t.push_back({r, indices_[k], values_[k]});
  return t;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& x : t) std::swap(x.row, x.col);
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("sparse product: dimension mismatch");
  return from_eigen(to_eigen() * o.to_eigen());
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("sparse sum: dimension mismatch");
  auto t = triplets();
  auto u = o.triplets();
  t.insert(t.end(), u.begin(), u.end());
  return from_triplets(rows_, cols_, std::move(t));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o * -1.0; }

SparseMatrix SparseMatrix::operator*(double s) const {
  auto t = triplets();
  for (auto& x : t) x.value *= s;
  return from_triplets(rows_, cols_, std::move(t));
}

Eigen::SparseMatrix<double, Eigen::RowMajor> SparseMatrix::to_eigen() const {
  std::vector<Eigen::Triplet<double>> t;
  for (const auto& x : triplets()) t.emplace_back(x.row, x.col, x.value);
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(rows_, cols_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& x : triplets()) d(x.row, x.col) = x.value;
  return d;
}

SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<int>& row_sizes, const std::vector<int>& col_sizes) {
  std::vector<Triplet> t;
  int r0 = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    int c0 = 0;
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      if (const SparseMatrix* b = blocks[i][j]) {
        if (b->rows() != row_sizes[i] || b->cols() != col_sizes[j])
          throw std::invalid_argument("block matrix: block size mismatch");
        for (auto x : b->triplets()) t.push_back({x.row + r0, x.col + c0, x.value});
      }
      c0 += col_sizes[j];
    }
    r0 += row_sizes[i];
  }
  int nc = 0;
  for (int c : col_sizes) nc += c;
  return SparseMatrix::from_triplets(r0, nc, std::move(t));
}

SparseMatrix kron(const Eigen::MatrixXd& w, const SparseMatrix& e) {
  std::vector<Triplet> t;
  auto et = e.triplets();
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j)
      if (w(i, j) != 0.0)
        for (const auto& x : et) t.push_back({i * e.rows() + x.row, j * e.cols() + x.col, w(i, j) * x.value});
  return SparseMatrix::from_triplets(static_cast<int>(w.rows()) * e.rows(), static_cast<int>(w.cols()) * e.cols(),
                                     std::move(t));
}

struct Factorization::Impl {
  Eigen::SparseMatrix<double> a;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

Vector Factorization::solve(const Vector& b) const {
  if (b.size() != n_) throw std::invalid_argument("solve: dimension mismatch");
  return impl_->lu.solve(b);
}

Vector Factorization::solve_transpose(const Vector& b) const {
  if (b.size() != n_) throw std::invalid_argument("solve: dimension mismatch");
  return impl_->lu.transpose().solve(b);
}

namespace {

// Hager's estimate of |A^-1|_1
double inverse_norm1_estimate(const Factorization& f) {
  const int n = f.size();
  Vector x = Vector::Constant(n, 1.0 / n);
  double est = 0.0;
  int last = -1;
  for (int it = 0; it < 5; ++it) {
    Vector y = f.solve(x);
    est = y.lpNorm<1>();
    Vector xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    Vector z = f.solve_transpose(xi);
    Eigen::Index j;
    double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x) || j == last) break;
    x.setZero();
    x[j] = 1.0;
    last = static_cast<int>(j);
  }
  return est;
}

}  // namespace

Factorization factorize(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("factorize: matrix must be square");
  auto impl = std::make_shared<Factorization::Impl>();
  impl->a = Eigen::SparseMatrix<double>(a.to_eigen());
  impl->a.makeCompressed();
  impl->lu.compute(impl->a);
  if (impl->lu.info() != Eigen::Success)
    throw std::runtime_error("factorize: singular matrix (" + impl->lu.lastErrorMessage() + ")");
  Factorization f;
  f.n_ = a.rows();
  f.impl_ = impl;
  if (f.n_ == 0) return f;
  double norm1 = 0.0;
  for (int c = 0; c < impl->a.outerSize(); ++c) {
    double s = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(impl->a, c); it; ++it) s += std::abs(it.value());
    norm1 = std::max(norm1, s);
  }
  double inv = inverse_norm1_estimate(f);
  f.rcond_ = (norm1 > 0.0 && std::isfinite(inv) && inv > 0.0) ? 1.0 / (norm1 * inv) : 0.0;
  if (!(f.rcond_ >= 1e-14))
    throw std::runtime_error("factorize: numerically singular matrix (rcond estimate " + std::to_string(f.rcond_) + ")");
  return f;
}

Vector solve(const Factorization& f, const Vector& b) { return f.solve(b); }

int row_rank(const SparseMatrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.to_dense().transpose());
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  Eigen::SparseMatrix<double> m(a.to_eigen());
  if (!Eigen::saveMarket(m, path)) throw std::runtime_error("cannot write matrix market file '" + path + "'");
}

SparseMatrix read_matrix_market(const std::string& path) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> m;
  if (!Eigen::loadMarket(m, path)) throw std::runtime_error("cannot read matrix market file '" + path + "'");
  return SparseMatrix::from_eigen(m);
}

}  // namespace netpdae
