// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "acoustodg/sparse.hpp"

namespace adg {

/// Per-block lower-triangular Cholesky factors of a block-diagonal SPD
/// matrix (uniform block size). Throws SpdFailureError naming the offending
/// element block when a pivot is not positive.
class BlockCholesky {
public:
  BlockCholesky(const SparseMatrix& m, int block_size);

  int block_size() const { return bs_; }
  int num_blocks() const { return static_cast<int>(factors_.size()); }
  const Eigen::MatrixXd& factor(int block) const { return factors_[block]; }

  /// y = L^{-1} x
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  /// y = L^{-T} x
  Eigen::VectorXd backward(const Eigen::VectorXd& x) const;
  Eigen::VectorXcd backward(const Eigen::VectorXcd& x) const;

private:
  int bs_ = 0;
  std::vector<Eigen::MatrixXd> factors_;
};

struct SpectrumEntry {
  std::complex<double> lambda;
  Eigen::VectorXcd vector;  // empty in values-only mode
  double residual = -1.0;   // ||Kx-lMx|| / (||Kx|| + |l| ||Mx||); -1 = not computed
};

enum class SolverPath { Dense, Arnoldi };

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // sorted by real part ascending
  SolverPath path = SolverPath::Dense;
  double shift = 0.0;
  int iterations = 0;
  bool partial = false;  // filter kept fewer than requested

  /// CSV with header "index,re,im,residual".
  std::string to_csv() const;
};

inline constexpr int kDenseSizeCap = 6000;

/// All eigenvalues of K x = lambda M x with block-diagonal SPD M, via the
/// dense spectrum of L^{-1} K L^{-T}: a self-adjoint solve when K is
/// numerically symmetric, otherwise Hessenberg reduction + shifted QR
/// (complex conjugate pairs allowed). Requires ndof <= kDenseSizeCap.
Spectrum dense_generalized_eig(const SparseMatrix& K, const SparseMatrix& M,
                               int block_size, bool compute_vectors = true);

struct ArnoldiOptions {
  double sigma = 1.5;
  int nev = 10;
  double tol = 1e-9;
  int max_restarts = 300;
  unsigned seed = 12345;
};

/// Ritz pairs of K x = lambda M x nearest the shift, via Arnoldi iteration
/// on (K - sigma M)^{-1} M with a sparse direct factorization. Krylov
/// dimension starts at max(20, 3*nev) and is extended until the requested
/// pairs pass the true-residual test.
Spectrum shift_invert_arnoldi(const SparseMatrix& K, const SparseMatrix& M,
                              const ArnoldiOptions& opts);

/// Drops the essential cluster |lambda - 1| <= delta (delta <= 0 selects the
/// default 1e-6*(1+max|Re lambda|)), merges conjugate pairs into single
/// entries carrying Im >= 0, and keeps the first `count` survivors sorted by
/// real part. Sets `partial` when fewer than `count` survive.
Spectrum filter_physical(const Spectrum& s, double delta, int count);

}  // namespace adg
