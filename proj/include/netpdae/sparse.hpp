#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <memory>
#include <string>
#include <vector>

namespace netpdae {

using Vector = Eigen::VectorXd;

struct Triplet {
  int row, col;
  double value;
};

// Compressed sparse row matrix. Column indices strictly increase within a
// row and explicit zeros are dropped when built from triplets.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), offsets_(static_cast<std::size_t>(rows) + 1, 0) {}

  // duplicates are summed
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);
  static SparseMatrix identity(int n);
  static SparseMatrix diagonal(const Vector& d);
  static SparseMatrix from_eigen(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m);
  static SparseMatrix from_dense(const Eigen::MatrixXd& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& offsets() const { return offsets_; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  double coeff(int r, int c) const;
  double max_abs() const;

  Vector operator*(const Vector& x) const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix operator*(double s) const;
  SparseMatrix operator-() const { return *this * -1.0; }

  std::vector<Triplet> triplets() const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_eigen() const;
  Eigen::MatrixXd to_dense() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> indices_;
  std::vector<double> values_;
};

inline SparseMatrix operator*(double s, const SparseMatrix& m) { return m * s; }

// Assemble a block matrix; nullptr blocks are zero. Block sizes are taken from
// row_sizes / col_sizes.
SparseMatrix block_matrix(const std::vector<std::vector<const SparseMatrix*>>& blocks,
                          const std::vector<int>& row_sizes, const std::vector<int>& col_sizes);

// kron(W, E) for a small dense W
SparseMatrix kron(const Eigen::MatrixXd& w, const SparseMatrix& e);

class Factorization {
public:
  Vector solve(const Vector& b) const;
  Vector solve_transpose(const Vector& b) const;
  int size() const { return n_; }
  // estimate of 1 / (|A|_1 |A^-1|_1)
  double rcond() const { return rcond_; }

private:
  friend Factorization factorize(const SparseMatrix& a);
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  int n_ = 0;
  double rcond_ = 0.0;
};

// LU with partial pivoting; throws std::runtime_error when A is structurally
// or numerically singular.
Factorization factorize(const SparseMatrix& a);
Vector solve(const Factorization& f, const Vector& b);

int row_rank(const SparseMatrix& a, double tol = 1e-10);

void write_matrix_market(const SparseMatrix& a, const std::string& path);
SparseMatrix read_matrix_market(const std::string& path);

}  // namespace netpdae
