// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace adg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const;
};

enum class FacetKind : std::uint8_t { Interior, Boundary };

/// Local edge e of a ccw triangle runs from corner e to corner (e+1)%3.
inline constexpr std::array<std::array<int, 2>, 3> kLocalEdgeVertices{
    {{0, 1}, {1, 2}, {2, 0}}};

/// Mesh edge with its adjacency. `owner[0]` is always valid; `owner[1]` is
/// -1 for boundary facets. The stored unit normal points out of owner[0].
struct Facet {
  std::array<int, 2> vertices{-1, -1};
  std::array<int, 2> owner{-1, -1};
  std::array<int, 2> local_edge{-1, -1};
  double length = 0.0;  // h_F
  Vec2 normal;
  FacetKind kind = FacetKind::Boundary;
};

/// Conforming triangular mesh with full facet topology. Immutable after
/// construction; safe to share across threads.
struct TriMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<Facet> facets;
  double h_max = 0.0;  // max element diameter

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_facets() const { return static_cast<int>(facets.size()); }
  int num_interior_facets() const;
  int num_boundary_facets() const;

  double signed_area(int tri) const;
  double diameter(int tri) const;
  Vec2 centroid(int tri) const;

  /// Vertices of triangle `tri` in ccw order.
  std::array<Vec2, 3> corners(int tri) const;

  /// Axis-aligned bounding box: {xmin, ymin, xmax, ymax}.
  std::array<double, 4> bounding_box() const;
};

enum class DiagonalPattern {
  BottomLeftTopRight,  // diagonal from (x0,y0) to (x1,y1) of each cell
  TopLeftBottomRight,
};

/// Structured n-by-n triangulation of the rectangle (0,a) x (0,b): every grid
/// cell is split along the fixed diagonal, so the mesh has 2*n^2 triangles,
/// (n+1)^2 vertices, 3n^2-2n interior and 4n boundary facets.
TriMesh generate_rect_mesh(double a, double b, int n,
                           DiagonalPattern diag = DiagonalPattern::BottomLeftTopRight);

/// Parse the plain-text mesh format:
///   line 1: "trimesh 1"
///   line 2: "<nv> <nt>"
///   nv lines "x y", then nt lines "i j k" (0-based vertex indices).
/// Triangle orientation is normalized to counterclockwise; facet topology is
/// rebuilt from scratch.
TriMesh import_mesh(const std::string& text);

/// Inverse of import_mesh; coordinates are written with 17 significant
/// digits so that a re-import is bit-exact.
std::string export_mesh(const TriMesh& mesh);

}  // namespace adg
