// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "acoustodg/errors.hpp"

#ifdef ACOUSTODG_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

namespace adg {

namespace {

#ifdef ACOUSTODG_HAVE_UMFPACK
using DirectLu = Eigen::UmfPackLU<Eigen::SparseMatrix<double>>;
#else
using DirectLu = Eigen::SparseLU<Eigen::SparseMatrix<double>>;
#endif

double pencil_residual(const SparseMatrix& K, const SparseMatrix& M,
                       std::complex<double> lambda, const Eigen::VectorXcd& x) {
  const int n = K.rows();
  Eigen::VectorXd xr = x.real(), xi = x.imag();
  Eigen::VectorXd kr(n), ki(n), mr(n), mi(n);
  K.multiply(xr.data(), kr.data());
  K.multiply(xi.data(), ki.data());
  M.multiply(xr.data(), mr.data());
  M.multiply(xi.data(), mi.data());
  Eigen::VectorXcd kx = kr + std::complex<double>(0, 1) * ki;
  Eigen::VectorXcd mx = mr + std::complex<double>(0, 1) * mi;
  const double num = (kx - lambda * mx).norm();
  const double den = kx.norm() + std::abs(lambda) * mx.norm();
  return den > 0.0 ? num / den : num;
}

void sort_by_real(std::vector<SpectrumEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
}

}  // namespace

BlockCholesky::BlockCholesky(const SparseMatrix& m, int block_size) : bs_(block_size) {
  if (block_size < 1 || m.rows() % block_size != 0) {
    throw std::invalid_argument("BlockCholesky: matrix size is not a multiple of the block size");
  }
  const int nb = m.rows() / block_size;
  factors_.resize(nb);
  for (int b = 0; b < nb; ++b) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(bs_, bs_);
    const int base = b * bs_;
    for (int i = 0; i < bs_; ++i) {
      for (std::int64_t p = m.row_ptr()[base + i]; p < m.row_ptr()[base + i + 1]; ++p) {
        const int j = m.col_idx()[p] - base;
        if (j < 0 || j >= bs_) {
          throw std::invalid_argument("BlockCholesky: matrix is not block-diagonal");
        }
        block(i, j) = m.values()[p];
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(block);
    if (llt.info() != Eigen::Success) {
      throw SpdFailureError("BlockCholesky: element block " + std::to_string(b) +
                            " is not symmetric positive definite");
    }
    factors_[b] = llt.matrixL();
  }
}

Eigen::VectorXd BlockCholesky::forward(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  for (int b = 0; b < num_blocks(); ++b) {
    y.segment(b * bs_, bs_) =
        factors_[b].triangularView<Eigen::Lower>().solve(x.segment(b * bs_, bs_));
  }
  return y;
}

Eigen::VectorXd BlockCholesky::backward(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  for (int b = 0; b < num_blocks(); ++b) {
    y.segment(b * bs_, bs_) = factors_[b]
                                  .transpose()
                                  .triangularView<Eigen::Upper>()
                                  .solve(x.segment(b * bs_, bs_));
  }
  return y;
}

Eigen::VectorXcd BlockCholesky::backward(const Eigen::VectorXcd& x) const {
  const Eigen::VectorXd re = backward(Eigen::VectorXd(x.real()));
  const Eigen::VectorXd im = backward(Eigen::VectorXd(x.imag()));
  return re + std::complex<double>(0.0, 1.0) * im;
}

std::string Spectrum::to_csv() const {
  std::string out = "index,re,im,residual\n";
  char buf[128];
  for (size_t i = 0; i < entries.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i,
                  entries[i].lambda.real(), entries[i].lambda.imag(), entries[i].residual);
    out += buf;
  }
  return out;
}

Spectrum dense_generalized_eig(const SparseMatrix& K, const SparseMatrix& M,
                               int block_size, bool compute_vectors) {
  const int n = K.rows();
  if (n > kDenseSizeCap) {
    throw std::invalid_argument("dense_generalized_eig: ndof " + std::to_string(n) +
                                " exceeds the dense cap " + std::to_string(kDenseSizeCap));
  }
  const BlockCholesky chol(M, block_size);

  // A = L^{-1} K L^{-T}, applied blockwise on the dense K image.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (std::int64_t p = K.row_ptr()[r]; p < K.row_ptr()[r + 1]; ++p) {
      a(r, K.col_idx()[p]) = K.values()[p];
    }
  }
  const int bs = block_size;
  for (int b = 0; b < chol.num_blocks(); ++b) {
    const auto& l = chol.factor(b);
    // right-multiply by L_b^{-T}: X_b = A_b * L_b^{-T}
    a.middleCols(b * bs, bs) =
        l.triangularView<Eigen::Lower>()
            .solve(a.middleCols(b * bs, bs).transpose())
            .transpose();
  }
  for (int b = 0; b < chol.num_blocks(); ++b) {
    const auto& l = chol.factor(b);
    a.middleRows(b * bs, bs) =
        l.triangularView<Eigen::Lower>().solve(a.middleRows(b * bs, bs));
  }

  const bool symmetric = K.asymmetry() <= 1e-12 * std::max(K.max_abs(), 1e-300);

  Spectrum s;
  s.path = SolverPath::Dense;
  if (symmetric) {
    a = 0.5 * (a + a.transpose()).eval();  // scrub factorization roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        a, compute_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw ConvergenceError("dense_generalized_eig: self-adjoint QR iteration failed");
    }
    s.entries.resize(n);
    for (int i = 0; i < n; ++i) {
      s.entries[i].lambda = es.eigenvalues()(i);
      if (compute_vectors) {
        const Eigen::VectorXd x = chol.backward(Eigen::VectorXd(es.eigenvectors().col(i)));
        s.entries[i].vector = x.cast<std::complex<double>>();
        s.entries[i].residual = pencil_residual(K, M, s.entries[i].lambda, s.entries[i].vector);
      }
    }
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, compute_vectors);
    if (es.info() != Eigen::Success) {
      throw ConvergenceError(
          "dense_generalized_eig: shifted QR iteration on the Hessenberg form did not "
          "converge within the iteration cap");
    }
    s.entries.resize(n);
    for (int i = 0; i < n; ++i) {
      s.entries[i].lambda = es.eigenvalues()(i);
      if (compute_vectors) {
        s.entries[i].vector = chol.backward(Eigen::VectorXcd(es.eigenvectors().col(i)));
        s.entries[i].residual = pencil_residual(K, M, s.entries[i].lambda, s.entries[i].vector);
      }
    }
  }
  sort_by_real(s.entries);
  s.iterations = 1;
  return s;
}

Spectrum shift_invert_arnoldi(const SparseMatrix& K, const SparseMatrix& M,
                              const ArnoldiOptions& opts) {
  const int n = K.rows();
  if (opts.nev < 1) throw std::invalid_argument("shift_invert_arnoldi: nev must be >= 1");
  if (opts.nev >= n) {
    throw std::invalid_argument("shift_invert_arnoldi: nev must be below the problem size");
  }

  const SparseMatrix shifted = K.axpy(1.0, -opts.sigma, M);
  Eigen::SparseMatrix<double> shifted_eigen = shifted.to_eigen();
  DirectLu lu;
  lu.compute(shifted_eigen);
  if (lu.info() != Eigen::Success) {
    throw SingularShiftError(
        "shift_invert_arnoldi: factorization of K - sigma*M failed at sigma = " +
        std::to_string(opts.sigma) + "; retry with a shift away from the spectrum");
  }

  const auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return lu.solve(M.multiply(x));
  };

  const int m_start = std::max(20, 3 * opts.nev);
  const int m_max = std::min(n, std::max({300, 8 * opts.nev, m_start}));

  Eigen::MatrixXd v(n, m_max + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m_max + 1, m_max);

  std::mt19937 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v0(n);
  for (int i = 0; i < n; ++i) v0(i) = gauss(rng);
  v.col(0) = v0 / v0.norm();

  Spectrum s;
  s.path = SolverPath::Arnoldi;
  s.shift = opts.sigma;

  int m = 0;
  int restarts = 0;
  int target_m = std::min(m_start, m_max);
  bool breakdown = false;

  while (true) {
    // extend the Arnoldi factorization to target_m columns
    for (; m < target_m; ++m) {
      Eigen::VectorXd w = apply(v.col(m));
      // modified Gram-Schmidt with one reorthogonalization pass
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= m; ++j) {
          const double proj = v.col(j).dot(w);
          w -= proj * v.col(j);
          h(j, m) += proj;
        }
      }
      const double beta = w.norm();
      h(m + 1, m) = beta;
      if (beta < 1e-14) {
        breakdown = true;  // invariant subspace found
        ++m;
        break;
      }
      v.col(m + 1) = w / beta;
    }
    s.iterations = m;

    // Ritz extraction from the leading m-by-m Hessenberg block.
    Eigen::EigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(m, m), true);
    if (es.info() != Eigen::Success) {
      throw ConvergenceError("shift_invert_arnoldi: Hessenberg QR iteration failed");
    }

    struct Candidate {
      std::complex<double> theta;
      int index;
    };
    std::vector<Candidate> cand;
    cand.reserve(m);
    for (int i = 0; i < m; ++i) {
      const std::complex<double> theta = es.eigenvalues()(i);
      if (std::abs(theta) < 1e-13) continue;  // lambda -> infinity junk
      cand.push_back({theta, i});
    }
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      return std::abs(a.theta) > std::abs(b.theta);  // nearest sigma first
    });

    const int want = std::min<int>(opts.nev, static_cast<int>(cand.size()));
    std::vector<SpectrumEntry> entries;
    entries.reserve(want);
    bool all_converged = true;
    for (int i = 0; i < want; ++i) {
      const auto& c = cand[i];
      SpectrumEntry entry;
      entry.lambda = opts.sigma + 1.0 / c.theta;
      const Eigen::VectorXcd y = es.eigenvectors().col(c.index);
      Eigen::VectorXcd x = v.leftCols(m) * y;
      x /= x.norm();
      entry.vector = std::move(x);
      entry.residual = pencil_residual(K, M, entry.lambda, entry.vector);
      if (entry.residual > opts.tol) {
        all_converged = false;
        break;
      }
      entries.push_back(std::move(entry));
    }

    if (all_converged && want == opts.nev) {
      s.entries = std::move(entries);
      sort_by_real(s.entries);
      return s;
    }
    if (breakdown || m >= m_max) {
      // exact invariant subspace or exhausted space: accept what converged
      if (breakdown) {
        std::vector<SpectrumEntry> ok;
        for (auto& e : entries) {
          if (e.residual <= opts.tol) ok.push_back(std::move(e));
        }
        if (!ok.empty() || n <= m) {
          s.entries = std::move(ok);
          sort_by_real(s.entries);
          s.partial = static_cast<int>(s.entries.size()) < opts.nev;
          return s;
        }
      }
      throw ConvergenceError("shift_invert_arnoldi: " + std::to_string(opts.nev) +
                             " pairs did not converge within Krylov dimension " +
                             std::to_string(m_max) + " (restarts used: " +
                             std::to_string(restarts) + ")");
    }
    if (++restarts > opts.max_restarts) {
      throw ConvergenceError("shift_invert_arnoldi: restart cap " +
                             std::to_string(opts.max_restarts) + " exceeded");
    }
    target_m = std::min(m_max, m + std::max(20, opts.nev));
  }
}

Spectrum filter_physical(const Spectrum& s, double delta, int count) {
  double max_re = 0.0;
  for (const auto& e : s.entries) max_re = std::max(max_re, std::abs(e.lambda.real()));
  const double gap = delta > 0.0 ? delta : 1e-6 * (1.0 + max_re);

  std::vector<SpectrumEntry> kept;
  for (const auto& e : s.entries) {
    if (std::abs(e.lambda - std::complex<double>(1.0, 0.0)) <= gap) continue;
    kept.push_back(e);
  }
  sort_by_real(kept);

  // merge conjugate pairs into one row with Im >= 0
  std::vector<SpectrumEntry> merged;
  merged.reserve(kept.size());
  for (size_t i = 0; i < kept.size(); ++i) {
    if (i + 1 < kept.size()) {
      const auto a = kept[i].lambda;
      const auto b = kept[i + 1].lambda;
      const double scale = 1.0 + std::abs(a);
      if (a.imag() != 0.0 && std::abs(a.real() - b.real()) <= 1e-10 * scale &&
          std::abs(a.imag() + b.imag()) <= 1e-10 * scale) {
        SpectrumEntry e = kept[a.imag() > 0.0 ? i : i + 1];
        e.lambda = {a.real(), std::abs(a.imag())};
        e.residual = std::max(kept[i].residual, kept[i + 1].residual);
        merged.push_back(std::move(e));
        ++i;
        continue;
      }
    }
    merged.push_back(kept[i]);
  }

  Spectrum out;
  out.path = s.path;
  out.shift = s.shift;
  out.iterations = s.iterations;
  if (static_cast<int>(merged.size()) > count) merged.resize(count);
  out.partial = static_cast<int>(merged.size()) < count;
  out.entries = std::move(merged);
  return out;
}

}  // namespace adg
