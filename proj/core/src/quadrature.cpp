// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adg {

namespace {

struct GaussRule1d {
  std::vector<double> nodes;    // on (-1,1)
  std::vector<double> weights;  // w.r.t. the weight (1-z)^alpha (1+z)^beta
};

// Golub-Welsch: nodes/weights of the n-point Gauss-Jacobi rule from the
// symmetric tridiagonal recurrence matrix.
GaussRule1d gauss_jacobi(int n, double alpha, double beta) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    J(k, k) = (beta * beta - alpha * alpha) == 0.0 && den == 0.0
                  ? 0.0
                  : (beta * beta - alpha * alpha) / den;
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double num = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab);
      const double den2 = (2.0 * kk + ab) * (2.0 * kk + ab);
      const double den3 = (2.0 * kk + ab + 1.0) * (2.0 * kk + ab - 1.0);
      const double b = std::sqrt(num / (den2 * den3));
      J(k, k + 1) = b;
      J(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  // mu0 = integral of the weight over (-1,1) = 2^(a+b+1) B(a+1,b+1)
  const double mu0 = std::pow(2.0, ab + 1.0) *
                     std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));
  GaussRule1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

int points_for_degree(int d) { return d / 2 + 1; }  // 2n-1 >= d

void check_degree(int d, const char* who) {
  if (d < 0 || d > kMaxQuadratureDegree) {
    throw std::invalid_argument(std::string(who) + ": requested exactness degree " +
                                std::to_string(d) + " outside [0," +
                                std::to_string(kMaxQuadratureDegree) + "]");
  }
}

}  // namespace

QuadratureRule quad_edge(int d) {
  check_degree(d, "quad_edge");
  const int n = points_for_degree(d);
  const GaussRule1d g = gauss_jacobi(n, 0.0, 0.0);
  QuadratureRule rule;
  rule.exactness = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = {0.5 * (g.nodes[i] + 1.0), 0.0};
    rule.weights[i] = 0.5 * g.weights[i];
  }
  return rule;
}

QuadratureRule quad_triangle(int d) {
  check_degree(d, "quad_triangle");
  const int n = points_for_degree(d);
  // Collapsed (Duffy) product rule: Legendre in the collapsed coordinate,
  // Jacobi(1,0) absorbing the (1-b) Jacobian factor in the other.
  const GaussRule1d ga = gauss_jacobi(n, 0.0, 0.0);
  const GaussRule1d gb = gauss_jacobi(n, 1.0, 0.0);
  QuadratureRule rule;
  rule.exactness = 2 * n - 1;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int q = 0; q < n; ++q) {
    const double b = gb.nodes[q];
    const double y = 0.5 * (1.0 + b);
    for (int r = 0; r < n; ++r) {
      const double a = ga.nodes[r];
      const double x = 0.25 * (1.0 + a) * (1.0 - b);
      rule.points.push_back({x, y});
      rule.weights.push_back(ga.weights[r] * gb.weights[q] / 8.0);
    }
  }
  return rule;
}

}  // namespace adg
