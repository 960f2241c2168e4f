// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "acoustodg/errors.hpp"

namespace adg {

double Vec2::norm() const { return std::hypot(x, y); }

namespace {

constexpr auto& kLocalEdges = kLocalEdgeVertices;

double triangle_signed_area(Vec2 p0, Vec2 p1, Vec2 p2) {
  return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

// Builds the facet list in deterministic order: triangles in index order,
// local edges 01, 12, 20; a facet is created at its first appearance.
void build_facets(TriMesh& mesh) {
  mesh.facets.clear();
  std::map<std::pair<int, int>, int> facet_of_edge;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const int va = tri[kLocalEdges[e][0]];
      const int vb = tri[kLocalEdges[e][1]];
      const auto key = std::minmax(va, vb);
      auto it = facet_of_edge.find(key);
      if (it == facet_of_edge.end()) {
        Facet f;
        f.vertices = {va, vb};
        f.owner[0] = t;
        f.local_edge[0] = e;
        const Vec2 d = mesh.vertices[vb] - mesh.vertices[va];
        f.length = d.norm();
        // Rotate the ccw edge direction by -90 degrees: outward of owner[0].
        f.normal = Vec2{d.y, -d.x} * (1.0 / f.length);
        f.kind = FacetKind::Boundary;
        facet_of_edge.emplace(key, mesh.num_facets());
        mesh.facets.push_back(f);
      } else {
        Facet& f = mesh.facets[it->second];
        if (f.owner[1] >= 0) {
          throw NonManifoldError("edge (" + std::to_string(key.first) + "," +
                                 std::to_string(key.second) +
                                 ") is shared by more than two triangles");
        }
        f.owner[1] = t;
        f.local_edge[1] = e;
        f.kind = FacetKind::Interior;
      }
    }
  }
  double h = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) h = std::max(h, mesh.diameter(t));
  mesh.h_max = h;
}

void check_positive_areas(const TriMesh& mesh) {
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!(mesh.signed_area(t) > 0.0)) {
      throw InvertedElementError("triangle " + std::to_string(t) +
                                 " has non-positive area after orientation fixup");
    }
  }
}

}  // namespace

int TriMesh::num_interior_facets() const {
  int c = 0;
  for (const auto& f : facets) c += (f.kind == FacetKind::Interior);
  return c;
}

int TriMesh::num_boundary_facets() const {
  return num_facets() - num_interior_facets();
}

double TriMesh::signed_area(int tri) const {
  const auto c = corners(tri);
  return triangle_signed_area(c[0], c[1], c[2]);
}

double TriMesh::diameter(int tri) const {
  const auto c = corners(tri);
  return std::max({(c[1] - c[0]).norm(), (c[2] - c[1]).norm(), (c[0] - c[2]).norm()});
}

Vec2 TriMesh::centroid(int tri) const {
  const auto c = corners(tri);
  return (c[0] + c[1] + c[2]) * (1.0 / 3.0);
}

std::array<Vec2, 3> TriMesh::corners(int tri) const {
  const auto& t = triangles[tri];
  return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
}

std::array<double, 4> TriMesh::bounding_box() const {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -ymin;
  for (const auto& v : vertices) {
    xmin = std::min(xmin, v.x);
    ymin = std::min(ymin, v.y);
    xmax = std::max(xmax, v.x);
    ymax = std::max(ymax, v.y);
  }
  return {xmin, ymin, xmax, ymax};
}

TriMesh generate_rect_mesh(double a, double b, int n, DiagonalPattern diag) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("generate_rect_mesh: dimensions must be positive");
  }
  if (n < 1) {
    throw std::invalid_argument("generate_rect_mesh: need at least one subdivision");
  }

  TriMesh mesh;
  mesh.vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.vertices.push_back({a * i / n, b * j / n});
    }
  }
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  mesh.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      if (diag == DiagonalPattern::BottomLeftTopRight) {
        mesh.triangles.push_back({v00, v10, v11});
        mesh.triangles.push_back({v00, v11, v01});
      } else {
        mesh.triangles.push_back({v00, v10, v01});
        mesh.triangles.push_back({v10, v11, v01});
      }
    }
  }

  build_facets(mesh);
  check_positive_areas(mesh);

  // Euler relation for the simply connected rectangle.
  const int euler = mesh.num_vertices() - mesh.num_facets() + mesh.num_triangles();
  if (euler != 1) {
    throw Error("generate_rect_mesh: Euler relation violated (V-E+T=" +
                std::to_string(euler) + ")");
  }
  return mesh;
}

TriMesh import_mesh(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "trimesh" || version != 1) {
    throw ParseError("mesh file: expected header 'trimesh 1'");
  }
  long long nv = 0, nt = 0;
  if (!(in >> nv >> nt) || nv < 3 || nt < 1) {
    throw ParseError("mesh file: bad vertex/triangle counts");
  }

  TriMesh mesh;
  mesh.vertices.resize(static_cast<size_t>(nv));
  for (long long i = 0; i < nv; ++i) {
    if (!(in >> mesh.vertices[i].x >> mesh.vertices[i].y)) {
      throw ParseError("mesh file: failed to read vertex " + std::to_string(i));
    }
  }
  mesh.triangles.resize(static_cast<size_t>(nt));
  for (long long t = 0; t < nt; ++t) {
    auto& tri = mesh.triangles[t];
    if (!(in >> tri[0] >> tri[1] >> tri[2])) {
      throw ParseError("mesh file: failed to read triangle " + std::to_string(t));
    }
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv) {
        throw DanglingIndexError("mesh file: triangle " + std::to_string(t) +
                                 " references vertex " + std::to_string(tri[k]) +
                                 " of " + std::to_string(nv));
      }
    }
    const double area = triangle_signed_area(mesh.vertices[tri[0]],
                                             mesh.vertices[tri[1]],
                                             mesh.vertices[tri[2]]);
    if (area == 0.0 || !std::isfinite(area)) {
      throw InvertedElementError("mesh file: triangle " + std::to_string(t) +
                                 " is degenerate");
    }
    if (area < 0.0) std::swap(tri[1], tri[2]);  // normalize to ccw
  }

  build_facets(mesh);
  check_positive_areas(mesh);
  return mesh;
}

std::string export_mesh(const TriMesh& mesh) {
  std::string out = "trimesh 1\n";
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_triangles()) + "\n";
  char buf[64];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x, v.y);
    out += buf;
  }
  for (const auto& t : mesh.triangles) {
    out += std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  }
  return out;
}

}  // namespace adg
