// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "acoustodg/mesh.hpp"

namespace adg {

/// Positive-weight quadrature rule, exact for polynomials of total degree
/// <= `exactness`. Triangle rules integrate over the unit reference triangle
/// {x,y >= 0, x+y <= 1} (weights sum to 1/2); edge rules over [0,1]
/// (weights sum to 1).
struct QuadratureRule {
  std::vector<Vec2> points;  // edge rules store t in .x and 0 in .y
  std::vector<double> weights;
  int exactness = 0;
};

inline constexpr int kMaxQuadratureDegree = 30;

/// Gauss rule on the unit reference triangle, exact to total degree >= d.
QuadratureRule quad_triangle(int d);

/// Gauss-Legendre rule on [0,1], exact to degree >= d.
QuadratureRule quad_edge(int d);

}  // namespace adg
