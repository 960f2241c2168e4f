// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <string>
#include <vector>

namespace adg {

/// Square real matrix in compressed-row storage. Assembled from coordinate
/// triplets; duplicate entries are summed, entries never touched are not
/// stored (explicit zeros inside touched blocks are kept).
class SparseMatrix {
public:
  SparseMatrix() = default;
  explicit SparseMatrix(int n) : n_(n), row_ptr_(n + 1, 0) {}

  int rows() const { return n_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values_.size()); }

  const std::vector<std::int64_t>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// y = A x
  void multiply(const double* x, double* y) const;
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

  double max_abs() const;

  /// max_ij |A - A^T|, for symmetry checks.
  double asymmetry() const;

  SparseMatrix transpose() const;

  /// Entrywise a*this + b*other; the two patterns are merged.
  SparseMatrix axpy(double a, double b, const SparseMatrix& other) const;

  double coeff(int i, int j) const;

  /// Copy into an Eigen column-major sparse matrix (solver interop).
  Eigen::SparseMatrix<double> to_eigen() const;

  /// Text export: "csr <nrows> <nnz>" then row-pointer, column-index and
  /// value lines (17 significant digits).
  std::string export_text() const;

  static SparseMatrix from_triplets(int n, std::vector<Eigen::Triplet<double>>& triplets);

private:
  int n_ = 0;
  std::vector<std::int64_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

}  // namespace adg
