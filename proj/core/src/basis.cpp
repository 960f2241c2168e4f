// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adg {

namespace {

void check_args(int k, const std::vector<Vec2>& pts) {
  if (k < 1 || k > kMaxDegree) {
    throw std::invalid_argument("basis degree k=" + std::to_string(k) +
                                " outside the supported range [1," +
                                std::to_string(kMaxDegree) + "]");
  }
  constexpr double slack = 1e-12;
  for (const auto& p : pts) {
    if (p.x < -slack || p.y < -slack || p.x + p.y > 1.0 + slack) {
      throw std::invalid_argument("basis evaluation point outside the reference triangle");
    }
  }
}

// P_0..P_nmax^(alpha,beta) at z.
void jacobi_values(int nmax, double alpha, double beta, double z, double* out) {
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = (alpha + 1.0) + (alpha + beta + 2.0) * (z - 1.0) * 0.5;
  for (int n = 2; n <= nmax; ++n) {
    const double ab = alpha + beta;
    const double c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0);
    const double c2 = (2.0 * n + ab - 1.0) * (alpha * alpha - beta * beta);
    const double c3 = (2.0 * n + ab - 2.0) * (2.0 * n + ab - 1.0) * (2.0 * n + ab);
    const double c4 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + ab);
    out[n] = ((c2 + c3 * z) * out[n - 1] - c4 * out[n - 2]) / c1;
  }
}

// Scaled Legendre L_i(x,t) = t^i P_i((2x-t)/t) and its partials, a polynomial
// family that stays finite at the collapsed vertex t = 0.
struct ScaledLegendre {
  double val[kMaxDegree + 1];
  double dx[kMaxDegree + 1];
  double dt[kMaxDegree + 1];

  ScaledLegendre(int k, double x, double t) {
    val[0] = 1.0;
    dx[0] = 0.0;
    dt[0] = 0.0;
    if (k >= 1) {
      val[1] = 2.0 * x - t;
      dx[1] = 2.0;
      dt[1] = -1.0;
    }
    for (int i = 1; i < k; ++i) {
      const double a = 2.0 * i + 1.0;
      const double s = 2.0 * x - t;
      val[i + 1] = (a * s * val[i] - i * t * t * val[i - 1]) / (i + 1.0);
      dx[i + 1] = (a * (2.0 * val[i] + s * dx[i]) - i * t * t * dx[i - 1]) / (i + 1.0);
      dt[i + 1] =
          (a * (-val[i] + s * dt[i]) - i * (2.0 * t * val[i - 1] + t * t * dt[i - 1])) /
          (i + 1.0);
    }
  }
};

double norm_constant(int i, int j) {
  return std::sqrt(2.0 * (2.0 * i + 1.0) * (i + j + 1.0));
}

// Index layout: ascending total degree d, within d ascending i of (i, d-i).
template <typename Visit>
void for_each_mode(int k, Visit&& visit) {
  int idx = 0;
  for (int d = 0; d <= k; ++d) {
    for (int i = 0; i <= d; ++i) visit(idx++, i, d - i);
  }
}

}  // namespace

Eigen::MatrixXd eval_basis(int k, const std::vector<Vec2>& pts) {
  check_args(k, pts);
  const int nk = basis_dimension(k);
  Eigen::MatrixXd table(nk, static_cast<Eigen::Index>(pts.size()));
  double J[kMaxDegree + 1];
  for (size_t q = 0; q < pts.size(); ++q) {
    const double x = pts[q].x, y = pts[q].y;
    const ScaledLegendre L(k, x, 1.0 - y);
    const double u = 2.0 * y - 1.0;
    for (int i = 0; i <= k; ++i) {
      jacobi_values(k - i, 2.0 * i + 1.0, 0.0, u, J);
      for_each_mode(k, [&](int idx, int bi, int bj) {
        if (bi == i) table(idx, q) = norm_constant(bi, bj) * L.val[bi] * J[bj];
      });
    }
  }
  return table;
}

GradTable eval_grad(int k, const std::vector<Vec2>& pts) {
  check_args(k, pts);
  const int nk = basis_dimension(k);
  GradTable g;
  g.dx.resize(nk, static_cast<Eigen::Index>(pts.size()));
  g.dy.resize(nk, static_cast<Eigen::Index>(pts.size()));
  double J[kMaxDegree + 1];
  double Jd[kMaxDegree + 1];
  for (size_t q = 0; q < pts.size(); ++q) {
    const double x = pts[q].x, y = pts[q].y;
    const ScaledLegendre L(k, x, 1.0 - y);
    const double u = 2.0 * y - 1.0;
    for (int i = 0; i <= k; ++i) {
      const double alpha = 2.0 * i + 1.0;
      jacobi_values(k - i, alpha, 0.0, u, J);
      // dP_j^(a,0)/du = (j+a+1)/2 * P_{j-1}^(a+1,1)
      jacobi_values(std::max(k - i - 1, 0), alpha + 1.0, 1.0, u, Jd);
      for_each_mode(k, [&](int idx, int bi, int bj) {
        if (bi != i) return;
        const double c = norm_constant(bi, bj);
        const double dJ = bj == 0 ? 0.0 : 0.5 * (bj + alpha + 1.0) * Jd[bj - 1];
        g.dx(idx, q) = c * L.dx[bi] * J[bj];
        g.dy(idx, q) = c * (-L.dt[bi] * J[bj] + 2.0 * L.val[bi] * dJ);
      });
    }
  }
  return g;
}

}  // namespace adg
