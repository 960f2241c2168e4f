// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace adg {

SparseMatrix SparseMatrix::from_triplets(int n,
                                         std::vector<Eigen::Triplet<double>>& triplets) {
  std::sort(triplets.begin(), triplets.end(),
            [](const Eigen::Triplet<double>& a, const Eigen::Triplet<double>& b) {
              return a.row() != b.row() ? a.row() < b.row() : a.col() < b.col();
            });
  SparseMatrix m(n);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  size_t i = 0;
  while (i < triplets.size()) {
    const int r = triplets[i].row();
    const int c = triplets[i].col();
    double v = 0.0;
    while (i < triplets.size() && triplets[i].row() == r && triplets[i].col() == c) {
      v += triplets[i].value();
      ++i;
    }
    m.col_idx_.push_back(c);
    m.values_.push_back(v);
    ++m.row_ptr_[r + 1];
  }
  for (int r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

void SparseMatrix::multiply(const double* x, double* y) const {
  for (int r = 0; r < n_; ++r) {
    double s = 0.0;
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      s += values_[p] * x[col_idx_[p]];
    }
    y[r] = s;
  }
}

Eigen::VectorXd SparseMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(n_);
  multiply(x.data(), y.data());
  return y;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(values_.size());
  for (int r = 0; r < n_; ++r) {
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      t.emplace_back(col_idx_[p], r, values_[p]);
    }
  }
  return from_triplets(n_, t);
}

double SparseMatrix::asymmetry() const {
  const SparseMatrix at = transpose();
  const SparseMatrix diff = axpy(1.0, -1.0, at);
  return diff.max_abs();
}

SparseMatrix SparseMatrix::axpy(double a, double b, const SparseMatrix& other) const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(values_.size() + other.values_.size());
  for (int r = 0; r < n_; ++r) {
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      t.emplace_back(r, col_idx_[p], a * values_[p]);
    }
  }
  for (int r = 0; r < other.n_; ++r) {
    for (std::int64_t p = other.row_ptr_[r]; p < other.row_ptr_[r + 1]; ++p) {
      t.emplace_back(r, other.col_idx_[p], b * other.values_[p]);
    }
  }
  return from_triplets(std::max(n_, other.n_), t);
}

double SparseMatrix::coeff(int i, int j) const {
  for (std::int64_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
    if (col_idx_[p] == j) return values_[p];
  }
  return 0.0;
}

Eigen::SparseMatrix<double> SparseMatrix::to_eigen() const {
  Eigen::SparseMatrix<double> m(n_, n_);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(values_.size());
  for (int r = 0; r < n_; ++r) {
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      t.emplace_back(r, col_idx_[p], values_[p]);
    }
  }
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::string SparseMatrix::export_text() const {
  std::string out = "csr " + std::to_string(n_) + " " + std::to_string(nnz()) + "\n";
  char buf[40];
  for (int r = 0; r <= n_; ++r) {
    out += std::to_string(row_ptr_[r]);
    out += r == n_ ? '\n' : ' ';
  }
  for (std::int64_t p = 0; p < nnz(); ++p) {
    out += std::to_string(col_idx_[p]);
    out += p + 1 == nnz() ? '\n' : ' ';
  }
  for (std::int64_t p = 0; p < nnz(); ++p) {
    std::snprintf(buf, sizeof(buf), "%.17g", values_[p]);
    out += buf;
    out += p + 1 == nnz() ? '\n' : ' ';
  }
  return out;
}

}  // namespace adg
