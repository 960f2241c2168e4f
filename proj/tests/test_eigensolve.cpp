// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "acoustodg/assembly.hpp"
#include "acoustodg/eigensolve.hpp"
#include "acoustodg/errors.hpp"

using namespace adg;

namespace {

SparseMatrix from_dense(const Eigen::MatrixXd& d) {
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < d.rows(); ++i) {
    for (int j = 0; j < d.cols(); ++j) {
      if (d(i, j) != 0.0) t.emplace_back(i, j, d(i, j));
    }
  }
  return SparseMatrix::from_triplets(static_cast<int>(d.rows()), t);
}

SparseMatrix identity(int n) { return from_dense(Eigen::MatrixXd::Identity(n, n)); }

// Random SPD block-diagonal matrix with uniform blocks.
SparseMatrix random_block_spd(int blocks, int bs, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(blocks * bs, blocks * bs);
  for (int b = 0; b < blocks; ++b) {
    Eigen::MatrixXd r(bs, bs);
    for (int i = 0; i < bs; ++i) {
      for (int j = 0; j < bs; ++j) r(i, j) = gauss(rng);
    }
    d.block(b * bs, b * bs, bs, bs) =
        r.transpose() * r + bs * Eigen::MatrixXd::Identity(bs, bs);
  }
  return from_dense(d);
}

struct DgPair {
  DgSpace space;
  SparseMatrix k, m;
};

DgPair pressure_pair(int n, int degree, const std::string& density, int eps, double a_s) {
  DgPair p;
  const TriMesh mesh = generate_rect_mesh(1.0, 1.1, n);
  p.space = make_space(mesh, degree, Arity::Scalar);
  const CoefficientField coeff = builtin_density(density);
  DgFormConfig cfg;
  cfg.eps = eps;
  cfg.a_s = a_s;
  p.k = assemble_stiffness_pressure(p.space, coeff, cfg);
  p.m = assemble_mass_pressure(p.space, coeff);
  return p;
}

DgPair displacement_pair(int n, int degree, const std::string& density, int eps, double a_s) {
  DgPair p;
  const TriMesh mesh = generate_rect_mesh(1.0, 1.1, n);
  p.space = make_space(mesh, degree, Arity::Vector2);
  const CoefficientField coeff = builtin_density(density);
  DgFormConfig cfg;
  cfg.eps = eps;
  cfg.a_s = a_s;
  cfg.boundary_mode = BoundaryMode::WeakNormal;
  p.k = assemble_stiffness_disp(p.space, coeff, cfg);
  p.m = assemble_mass_disp(p.space, coeff);
  return p;
}

}  // namespace

TEST_CASE("block cholesky: identity blocks give identity factors") {
  const BlockCholesky chol(identity(12), 3);
  for (int b = 0; b < 4; ++b) {
    CHECK((chol.factor(b) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("block cholesky: reconstruction of random SPD blocks") {
  const SparseMatrix m = random_block_spd(6, 5, 42);
  const BlockCholesky chol(m, 5);
  for (int b = 0; b < 6; ++b) {
    const Eigen::MatrixXd l = chol.factor(b);
    Eigen::MatrixXd block(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) block(i, j) = m.coeff(b * 5 + i, b * 5 + j);
    }
    CHECK((l * l.transpose() - block).cwiseAbs().maxCoeff() <= 1e-12 * block.norm());
  }
  // backward(forward(x)) solves M z = x
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(30, 1.0, 3.0);
  const Eigen::VectorXd z = chol.backward(chol.forward(x));
  Eigen::VectorXd mz(30);
  m.multiply(z.data(), mz.data());
  CHECK((mz - x).cwiseAbs().maxCoeff() <= 1e-10 * x.cwiseAbs().maxCoeff());
}

TEST_CASE("block cholesky names the failing block") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(6, 6);
  d(3, 3) = -2.0;  // block 1 has a negative diagonal entry
  CHECK_THROWS_WITH_AS(BlockCholesky(from_dense(d), 3), doctest::Contains("block 1"),
                       SpdFailureError);
}

TEST_CASE("dense path: diagonal pencil") {
  Eigen::MatrixXd kd(2, 2);
  kd << 2.0, 0.0, 0.0, 3.0;
  const Spectrum s = dense_generalized_eig(from_dense(kd), identity(2), 1);
  REQUIRE(s.entries.size() == 2);
  CHECK(s.entries[0].lambda.real() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.entries[1].lambda.real() == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(s.entries[0].residual <= 1e-12);
}

TEST_CASE("dense path: rotation matrix gives +-i") {
  Eigen::MatrixXd kd(2, 2);
  kd << 0.0, -1.0, 1.0, 0.0;
  const Spectrum s = dense_generalized_eig(from_dense(kd), identity(2), 1);
  REQUIRE(s.entries.size() == 2);
  CHECK(s.entries[0].lambda.real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(s.entries[0].lambda.imag() + 1.0) <= 1e-14);
  CHECK(std::abs(s.entries[1].lambda.imag() - 1.0) <= 1e-14);
}

TEST_CASE("dense cap is enforced") {
  CHECK_THROWS_AS(dense_generalized_eig(identity(kDenseSizeCap + 1), identity(kDenseSizeCap + 1), 1),
                  std::invalid_argument);
}

TEST_CASE("dense vs Arnoldi on a 200x200 random symmetric pair") {
  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd r(200, 200);
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) r(i, j) = gauss(rng);
  }
  const Eigen::MatrixXd kd = r.transpose() * r + 5.0 * Eigen::MatrixXd::Identity(200, 200);
  const SparseMatrix k = from_dense(kd);
  const SparseMatrix m = random_block_spd(20, 10, 77);

  const Spectrum dense = dense_generalized_eig(k, m, 10, false);
  ArnoldiOptions opts;
  opts.sigma = dense.entries.front().lambda.real() - 1.0;
  opts.nev = 10;
  opts.tol = 1e-10;
  const Spectrum arnoldi = shift_invert_arnoldi(k, m, opts);
  REQUIRE(arnoldi.entries.size() == 10);
  for (int i = 0; i < 10; ++i) {
    const double ref = dense.entries[i].lambda.real();
    CHECK(arnoldi.entries[i].lambda.real() ==
          doctest::Approx(ref).epsilon(1e-8));
    CHECK(arnoldi.entries[i].residual <= opts.tol);
  }
}

TEST_CASE("Arnoldi on a diagonal pencil returns the eigenvalues nearest sigma") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(100, 100);
  for (int i = 0; i < 100; ++i) d(i, i) = i + 1.0;
  ArnoldiOptions opts;
  opts.sigma = 4.9;
  opts.nev = 3;
  const Spectrum s = shift_invert_arnoldi(from_dense(d), identity(100), opts);
  REQUIRE(s.entries.size() == 3);
  CHECK(s.entries[0].lambda.real() == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(s.entries[1].lambda.real() == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(s.entries[2].lambda.real() == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("DG pair: dense and Arnoldi agree to 1e-9") {
  const DgPair p = pressure_pair(2, 2, "rho2", 1, 40.0);
  const Spectrum dense = dense_generalized_eig(p.k, p.m, p.space.block_size());
  ArnoldiOptions opts;
  opts.sigma = 1.5;
  opts.nev = 6;
  opts.tol = 1e-11;
  const Spectrum arnoldi = shift_invert_arnoldi(p.k, p.m, opts);
  REQUIRE(arnoldi.entries.size() == 6);
  // compare against the 6 dense eigenvalues nearest sigma
  std::vector<double> dist_sorted;
  for (const auto& e : dense.entries) dist_sorted.push_back(e.lambda.real());
  std::sort(dist_sorted.begin(), dist_sorted.end(), [&](double a, double b) {
    return std::abs(a - opts.sigma) < std::abs(b - opts.sigma);
  });
  dist_sorted.resize(6);
  std::sort(dist_sorted.begin(), dist_sorted.end());
  for (int i = 0; i < 6; ++i) {
    CHECK(arnoldi.entries[i].lambda.real() ==
          doctest::Approx(dist_sorted[i]).epsilon(1e-9));
  }
}

TEST_CASE("SIP spectra are real and shifted above one") {
  const DgPair p = pressure_pair(4, 1, "rho1", 1, 20.0);
  const Spectrum s = dense_generalized_eig(p.k, p.m, p.space.block_size(), false);
  for (const auto& e : s.entries) {
    CHECK(e.lambda.imag() == 0.0);
    CHECK(e.lambda.real() >= 1.0 - 1e-8);
  }
}

TEST_CASE("real nonsymmetric spectra are closed under conjugation") {
  const DgPair p = pressure_pair(3, 1, "coscos-inv", -1, 8.0);
  const Spectrum s = dense_generalized_eig(p.k, p.m, p.space.block_size(), false);
  for (const auto& e : s.entries) {
    if (e.lambda.imag() == 0.0) continue;
    bool found = false;
    for (const auto& other : s.entries) {
      if (std::abs(other.lambda.real() - e.lambda.real()) <= 1e-9 * (1 + std::abs(e.lambda)) &&
          std::abs(other.lambda.imag() + e.lambda.imag()) <= 1e-9 * (1 + std::abs(e.lambda))) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("filter drops the essential cluster and keeps the physical part") {
  Spectrum s;
  for (double l : {1.0, 1.0 + 1e-12, 7.83, 9.59}) {
    SpectrumEntry e;
    e.lambda = l;
    s.entries.push_back(e);
  }
  const Spectrum f = filter_physical(s, 1e-6, 10);
  REQUIRE(f.entries.size() == 2);
  CHECK(f.entries[0].lambda.real() == doctest::Approx(7.83));
  CHECK(f.entries[1].lambda.real() == doctest::Approx(9.59));
  CHECK(f.partial);  // asked for 10, got 2

  const Spectrum f2 = filter_physical(s, 1e-6, 2);
  CHECK(!f2.partial);
}

TEST_CASE("filter merges conjugate pairs into one row") {
  Spectrum s;
  SpectrumEntry a, b;
  a.lambda = {3.47649, 0.00009};
  b.lambda = {3.47649, -0.00009};
  s.entries = {b, a};
  const Spectrum f = filter_physical(s, 1e-6, 5);
  REQUIRE(f.entries.size() == 1);
  CHECK(f.entries[0].lambda.real() == doctest::Approx(3.47649));
  CHECK(f.entries[0].lambda.imag() == doctest::Approx(0.00009));
}

TEST_CASE("pressure formulation has exactly one eigenvalue at lambda = 1") {
  for (const char* density : {"const1", "rho2"}) {
    const DgPair p = pressure_pair(4, 2, density, 1, 30.0);
    const Spectrum s = dense_generalized_eig(p.k, p.m, p.space.block_size(), false);
    int cluster = 0;
    for (const auto& e : s.entries) {
      if (std::abs(e.lambda - std::complex<double>(1, 0)) <= 1e-8) ++cluster;
    }
    CHECK(cluster == 1);
  }
}

TEST_CASE("displacement lambda=1 cluster grows under refinement") {
  int prev = -1;
  for (int n : {2, 3, 4}) {
    const DgPair p = displacement_pair(n, 1, "rho1", 1, 20.0);
    const Spectrum s = dense_generalized_eig(p.k, p.m, p.space.block_size(), false);
    int cluster = 0;
    for (const auto& e : s.entries) {
      if (std::abs(e.lambda - std::complex<double>(1, 0)) <= 1e-6) ++cluster;
    }
    CHECK(cluster > 0);
    CHECK(cluster >= prev);
    prev = cluster;
  }
}

TEST_CASE("singular shift is reported with retry guidance") {
  Eigen::MatrixXd kd(2, 2);
  kd << 2.0, 0.0, 0.0, 3.0;
  ArnoldiOptions opts;
  opts.sigma = 2.0;  // exactly an eigenvalue: K - sigma M is singular
  opts.nev = 1;
  CHECK_THROWS_AS(shift_invert_arnoldi(from_dense(kd), identity(2), opts),
                  adg::Error);
}

TEST_CASE("spectrum CSV export") {
  Spectrum s;
  SpectrumEntry e;
  e.lambda = {2.5, 0.0};
  e.residual = 1e-12;
  s.entries.push_back(e);
  const std::string csv = s.to_csv();
  CHECK(csv.rfind("index,re,im,residual\n", 0) == 0);
  CHECK(csv.find("0,2.5,0,") != std::string::npos);
}
