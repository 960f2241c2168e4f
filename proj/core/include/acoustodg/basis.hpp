// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

#include "acoustodg/mesh.hpp"

namespace adg {

inline constexpr int kMaxDegree = 4;

/// dim P_k on a triangle: (k+1)(k+2)/2.
constexpr int basis_dimension(int k) { return (k + 1) * (k + 2) / 2; }

/// Modal basis of P_k on the unit reference triangle {x,y>=0, x+y<=1},
/// orthonormal in L2: the reference mass matrix is the identity. Functions
/// are ordered by ascending total degree, the first one is the constant.
///
/// Returns the (n_k x #pts) value table.
Eigen::MatrixXd eval_basis(int k, const std::vector<Vec2>& pts);

/// x- and y-derivative tables of the same basis, each (n_k x #pts).
struct GradTable {
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
};
GradTable eval_grad(int k, const std::vector<Vec2>& pts);

}  // namespace adg
