// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <memory>

#include "acoustodg/basis.hpp"
#include "acoustodg/mesh.hpp"

namespace adg {

enum class Arity : int { Scalar = 1, Vector2 = 2 };

/// Broken polynomial space P_k(mesh)^arity with an element-blocked dof
/// layout: element e owns the contiguous range
/// [e*block_size, (e+1)*block_size) with component-major ordering inside
/// the block.
struct DgSpace {
  std::shared_ptr<const TriMesh> mesh;
  int degree = 1;
  Arity arity = Arity::Scalar;

  DgSpace() = default;
  DgSpace(std::shared_ptr<const TriMesh> m, int k, Arity a)
      : mesh(std::move(m)), degree(k), arity(a) {}

  int components() const { return static_cast<int>(arity); }
  int shape_count() const { return basis_dimension(degree); }
  int block_size() const { return components() * shape_count(); }
  int block_start(int element) const { return element * block_size(); }
  int ndof() const { return mesh->num_triangles() * block_size(); }

  /// dof index of shape function `i`, component `comp`, on `element`.
  int dof(int element, int comp, int i) const {
    return block_start(element) + comp * shape_count() + i;
  }
};

inline DgSpace make_space(const TriMesh& mesh, int k, Arity a) {
  return DgSpace(std::make_shared<TriMesh>(mesh), k, a);
}

/// Discrete function: coefficient vector over a DgSpace. Coefficients are
/// stored complex; real-valued functions simply carry zero imaginary parts.
struct DgFunction {
  DgSpace space;
  Eigen::VectorXcd coeffs;
};

}  // namespace adg
