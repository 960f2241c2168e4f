// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "acoustodg/basis.hpp"
#include "acoustodg/quadrature.hpp"

using namespace adg;

namespace {

// Exact monomial moment over the unit reference triangle: m! n! / (m+n+2)!
double triangle_moment(int m, int n) {
  return std::exp(std::lgamma(m + 1.0) + std::lgamma(n + 1.0) - std::lgamma(m + n + 3.0));
}

std::vector<Vec2> lattice_points(int k) {
  std::vector<Vec2> pts;
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k - i; ++j) {
      pts.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k});
    }
  }
  return pts;
}

Eigen::MatrixXd reference_mass(int k) {
  const QuadratureRule rule = quad_triangle(2 * k + 1);
  const Eigen::MatrixXd val = eval_basis(k, rule.points);
  Eigen::VectorXd w(rule.weights.size());
  for (size_t q = 0; q < rule.weights.size(); ++q) w(q) = rule.weights[q];
  return val * w.asDiagonal() * val.transpose();
}

}  // namespace

TEST_CASE("triangle rule weights sum to the reference measure") {
  for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
    const QuadratureRule rule = quad_triangle(d);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rule.exactness >= d);
  }
}

TEST_CASE("edge rule weights sum to one") {
  for (int d = 0; d <= kMaxQuadratureDegree; ++d) {
    const QuadratureRule rule = quad_edge(d);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("triangle moments: 1 -> 1/2, xy -> 1/24") {
  const QuadratureRule rule = quad_triangle(2);
  double s1 = 0.0, sxy = 0.0;
  for (size_t q = 0; q < rule.points.size(); ++q) {
    s1 += rule.weights[q];
    sxy += rule.weights[q] * rule.points[q].x * rule.points[q].y;
  }
  CHECK(s1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sxy == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("edge Gauss d=5 integrates x^5 to 1/6") {
  const QuadratureRule rule = quad_edge(5);
  double s = 0.0;
  for (size_t q = 0; q < rule.points.size(); ++q) {
    s += rule.weights[q] * std::pow(rule.points[q].x, 5);
  }
  CHECK(std::abs(s - 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("monomial sweep against analytic moments up to the maximum degree") {
  for (int d = 1; d <= kMaxQuadratureDegree; d += 3) {
    const QuadratureRule rule = quad_triangle(d);
    for (int m = 0; m + 0 <= d; ++m) {
      for (int n = 0; m + n <= d; ++n) {
        double s = 0.0;
        for (size_t q = 0; q < rule.points.size(); ++q) {
          s += rule.weights[q] * std::pow(rule.points[q].x, m) * std::pow(rule.points[q].y, n);
        }
        CHECK(std::abs(s - triangle_moment(m, n)) <= 1e-13);
      }
    }
    const QuadratureRule edge = quad_edge(d);
    for (int m = 0; m <= d; ++m) {
      double s = 0.0;
      for (size_t q = 0; q < edge.points.size(); ++q) {
        s += edge.weights[q] * std::pow(edge.points[q].x, m);
      }
      CHECK(std::abs(s - 1.0 / (m + 1.0)) <= 1e-13);
    }
  }
}

TEST_CASE("unsupported quadrature degree names the maximum") {
  CHECK_THROWS_WITH_AS(quad_triangle(kMaxQuadratureDegree + 1),
                       doctest::Contains(std::to_string(kMaxQuadratureDegree).c_str()),
                       std::invalid_argument);
  CHECK_THROWS_AS(quad_edge(-1), std::invalid_argument);
}

TEST_CASE("push-forward identity: mapped rule integrates affine images exactly") {
  // affine map K: (0,0),(2,0.3),(0.4,1.5); integral of f over K equals
  // det(J) * reference integral of f o F
  const double j00 = 2.0, j10 = 0.3, j01 = 0.4, j11 = 1.5;
  const double det = j00 * j11 - j01 * j10;
  const QuadratureRule rule = quad_triangle(4);
  const auto f = [](double x, double y) { return x * x * y + 3.0 * y * y - x + 0.5; };
  double mapped = 0.0;
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const double x = j00 * rule.points[q].x + j01 * rule.points[q].y;
    const double y = j10 * rule.points[q].x + j11 * rule.points[q].y;
    mapped += rule.weights[q] * det * f(x, y);
  }
  // oracle: exact moments of f over K by expanding in reference monomials
  const QuadratureRule fine = quad_triangle(12);
  double oracle = 0.0;
  for (size_t q = 0; q < fine.points.size(); ++q) {
    const double x = j00 * fine.points[q].x + j01 * fine.points[q].y;
    const double y = j10 * fine.points[q].x + j11 * fine.points[q].y;
    oracle += fine.weights[q] * det * f(x, y);
  }
  CHECK(mapped == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("basis dimension and degree guards") {
  CHECK(basis_dimension(3) == 10);
  const std::vector<Vec2> pts = {{0.25, 0.25}};
  CHECK(eval_basis(3, pts).rows() == 10);
  CHECK_THROWS_AS(eval_basis(0, pts), std::invalid_argument);
  CHECK_THROWS_AS(eval_basis(kMaxDegree + 1, pts), std::invalid_argument);
  CHECK_THROWS_AS(eval_basis(2, {{0.9, 0.9}}), std::invalid_argument);
}

TEST_CASE("reference mass matrix is the identity for all supported degrees") {
  for (int k = 1; k <= kMaxDegree; ++k) {
    const Eigen::MatrixXd mass = reference_mass(k);
    const Eigen::MatrixXd err = mass - Eigen::MatrixXd::Identity(mass.rows(), mass.cols());
    CHECK(err.cwiseAbs().maxCoeff() <= 1e-12);
    // conditioning follows directly
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mass);
    CHECK(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff() <= 10.0);
  }
}

TEST_CASE("constant function is reproduced through the Vandermonde system") {
  for (int k = 1; k <= kMaxDegree; ++k) {
    const auto nodes = lattice_points(k);
    const Eigen::MatrixXd v = eval_basis(k, nodes);  // nk x npts, square
    REQUIRE(v.rows() == v.cols());
    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(v.cols());
    const Eigen::VectorXd coef = v.transpose().fullPivLu().solve(rhs);
    // evaluate at random interior points
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.05, 0.9);
    std::vector<Vec2> probes;
    while (probes.size() < 25) {
      const double x = uni(rng), y = uni(rng);
      if (x + y < 0.95) probes.push_back({x, y});
    }
    const Eigen::MatrixXd pv = eval_basis(k, probes);
    const Eigen::VectorXd vals = pv.transpose() * coef;
    for (int i = 0; i < vals.size(); ++i) CHECK(std::abs(vals(i) - 1.0) <= 1e-12);
  }
}

TEST_CASE("random cubic polynomial interpolates exactly at 50 probes") {
  const int k = 3;
  std::mt19937 rng(20240501);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double c[10];
  for (double& ci : c) ci = uni(rng);
  const auto poly = [&](double x, double y) {
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y +
           c[6] * x * x * x + c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
  };
  const auto nodes = lattice_points(k);
  const Eigen::MatrixXd v = eval_basis(k, nodes);
  Eigen::VectorXd rhs(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) rhs(i) = poly(nodes[i].x, nodes[i].y);
  const Eigen::VectorXd coef = v.transpose().fullPivLu().solve(rhs);

  std::uniform_real_distribution<double> pos(0.02, 0.95);
  int checked = 0;
  while (checked < 50) {
    const double x = pos(rng), y = pos(rng);
    if (x + y > 0.97) continue;
    const Eigen::MatrixXd pv = eval_basis(k, {{x, y}});
    const double interp = (pv.transpose() * coef)(0);
    CHECK(std::abs(interp - poly(x, y)) <= 1e-10);
    ++checked;
  }
}

TEST_CASE("gradient of the constant mode vanishes; k=1 gradients are constant") {
  const std::vector<Vec2> pts = {{0.1, 0.2}, {0.3, 0.3}, {0.6, 0.1}};
  const GradTable g1 = eval_grad(1, pts);
  for (size_t q = 0; q < pts.size(); ++q) {
    CHECK(g1.dx(0, q) == 0.0);
    CHECK(g1.dy(0, q) == 0.0);
  }
  for (int i = 0; i < 3; ++i) {
    for (size_t q = 1; q < pts.size(); ++q) {
      CHECK(g1.dx(i, q) == doctest::Approx(g1.dx(i, 0)).epsilon(1e-14));
      CHECK(g1.dy(i, q) == doctest::Approx(g1.dy(i, 0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> uni(0.05, 0.85);
  for (int k = 1; k <= kMaxDegree; ++k) {
    int checked = 0;
    while (checked < 20) {
      const double x = uni(rng), y = uni(rng);
      if (x + y > 0.9) continue;
      const double eps = 1e-6;
      const Eigen::MatrixXd vx1 = eval_basis(k, {{x + eps, y}});
      const Eigen::MatrixXd vx0 = eval_basis(k, {{x - eps, y}});
      const Eigen::MatrixXd vy1 = eval_basis(k, {{x, y + eps}});
      const Eigen::MatrixXd vy0 = eval_basis(k, {{x, y - eps}});
      const GradTable g = eval_grad(k, {{x, y}});
      for (int i = 0; i < basis_dimension(k); ++i) {
        CHECK(std::abs(g.dx(i, 0) - (vx1(i, 0) - vx0(i, 0)) / (2 * eps)) <= 1e-6);
        CHECK(std::abs(g.dy(i, 0) - (vy1(i, 0) - vy0(i, 0)) / (2 * eps)) <= 1e-6);
      }
      ++checked;
    }
  }
}
