// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <utility>

#include "acoustodg/basis.hpp"
#include "acoustodg/mesh.hpp"

namespace adg {

/// Affine map from the unit reference triangle onto a mesh element.
struct ElementGeometry {
  Vec2 origin;
  double jac[2][2];     // columns: c1-c0, c2-c0
  double inv_jt[2][2];  // J^{-T}, maps reference gradients to physical
  double det = 0.0;     // > 0 for ccw elements

  Vec2 map(Vec2 ref) const {
    return {origin.x + jac[0][0] * ref.x + jac[0][1] * ref.y,
            origin.y + jac[1][0] * ref.x + jac[1][1] * ref.y};
  }
};

inline ElementGeometry element_geometry(const TriMesh& mesh, int t) {
  const auto c = mesh.corners(t);
  ElementGeometry g;
  g.origin = c[0];
  g.jac[0][0] = c[1].x - c[0].x;
  g.jac[1][0] = c[1].y - c[0].y;
  g.jac[0][1] = c[2].x - c[0].x;
  g.jac[1][1] = c[2].y - c[0].y;
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  const double inv_det = 1.0 / g.det;
  g.inv_jt[0][0] = g.jac[1][1] * inv_det;
  g.inv_jt[0][1] = -g.jac[1][0] * inv_det;
  g.inv_jt[1][0] = -g.jac[0][1] * inv_det;
  g.inv_jt[1][1] = g.jac[0][0] * inv_det;
  return g;
}

/// Physical gradients (d/dx, d/dy tables) from reference gradient tables.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> physical_grads(const GradTable& ref,
                                                                  const ElementGeometry& g) {
  Eigen::MatrixXd gx = g.inv_jt[0][0] * ref.dx + g.inv_jt[0][1] * ref.dy;
  Eigen::MatrixXd gy = g.inv_jt[1][0] * ref.dx + g.inv_jt[1][1] * ref.dy;
  return {std::move(gx), std::move(gy)};
}

}  // namespace adg
