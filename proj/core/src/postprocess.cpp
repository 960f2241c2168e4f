// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/postprocess.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "acoustodg/element_geometry.hpp"
#include "acoustodg/parallel.hpp"
#include "acoustodg/quadrature.hpp"

namespace adg {

namespace {

struct VolumeTables {
  QuadratureRule rule;
  Eigen::MatrixXd val;
  GradTable grad;
};

VolumeTables volume_tables(int k) {
  VolumeTables t;
  t.rule = quad_triangle(2 * k + 2);
  t.val = eval_basis(k, t.rule.points);
  t.grad = eval_grad(k, t.rule.points);
  return t;
}

}  // namespace

DgFunction pressure_from_displacement(const DgFunction& u_h, const CoefficientField& coeff) {
  const DgSpace& vs = u_h.space;
  if (vs.arity != Arity::Vector2) {
    throw std::invalid_argument("pressure_from_displacement: input must be vector2");
  }
  const TriMesh& mesh = *vs.mesh;
  const int k = vs.degree;
  const int nk = vs.shape_count();
  const VolumeTables t = volume_tables(k);
  const int nq = static_cast<int>(t.rule.points.size());
  const double c2 = coeff.c * coeff.c;

  DgFunction p;
  p.space = DgSpace(vs.mesh, k, Arity::Scalar);
  p.coeffs.resize(p.space.ndof());

  parallel_for(mesh.num_triangles(), [&](int e) {
    const ElementGeometry g = element_geometry(mesh, e);
    const auto [gx, gy] = physical_grads(t.grad, g);
    const auto u = u_h.coeffs.segment(vs.block_start(e), vs.block_size());
    // With the orthonormal reference basis the element mass matrix is
    // det(J) * I, so the projection reduces to quadrature sums.
    for (int i = 0; i < nk; ++i) {
      std::complex<double> acc = 0.0;
      for (int q = 0; q < nq; ++q) {
        const Vec2 x = g.map(t.rule.points[q]);
        std::complex<double> div_u = 0.0;
        for (int j = 0; j < nk; ++j) {
          div_u += u(j) * gx(j, q) + u(nk + j) * gy(j, q);
        }
        acc += t.rule.weights[q] * (-coeff(x.x, x.y) * c2) * div_u * t.val(i, q);
      }
      p.coeffs(p.space.dof(e, 0, i)) = acc;
    }
  });
  return p;
}

DgFunction displacement_from_pressure(const DgFunction& p_h, double omega2,
                                      const CoefficientField& coeff) {
  const DgSpace& ps = p_h.space;
  if (ps.arity != Arity::Scalar) {
    throw std::invalid_argument("displacement_from_pressure: input must be scalar");
  }
  if (std::abs(omega2) <= 1e-10) {
    throw std::invalid_argument(
        "displacement_from_pressure: omega^2 is numerically zero (the constant-pressure "
        "mode has no displacement)");
  }
  const TriMesh& mesh = *ps.mesh;
  const int k = ps.degree;
  const int nk = ps.shape_count();
  const VolumeTables t = volume_tables(k);
  const int nq = static_cast<int>(t.rule.points.size());

  DgFunction u;
  u.space = DgSpace(ps.mesh, k, Arity::Vector2);
  u.coeffs.resize(u.space.ndof());

  parallel_for(mesh.num_triangles(), [&](int e) {
    const ElementGeometry g = element_geometry(mesh, e);
    const auto [gx, gy] = physical_grads(t.grad, g);
    const auto p = p_h.coeffs.segment(ps.block_start(e), ps.block_size());
    for (int i = 0; i < nk; ++i) {
      std::complex<double> acc_x = 0.0, acc_y = 0.0;
      for (int q = 0; q < nq; ++q) {
        const Vec2 x = g.map(t.rule.points[q]);
        std::complex<double> px = 0.0, py = 0.0;
        for (int j = 0; j < nk; ++j) {
          px += p(j) * gx(j, q);
          py += p(j) * gy(j, q);
        }
        const double scale = 1.0 / (omega2 * coeff(x.x, x.y));
        acc_x += t.rule.weights[q] * scale * px * t.val(i, q);
        acc_y += t.rule.weights[q] * scale * py * t.val(i, q);
      }
      u.coeffs(u.space.dof(e, 0, i)) = acc_x;
      u.coeffs(u.space.dof(e, 1, i)) = acc_y;
    }
  });
  return u;
}

double correlation(const DgFunction& f, const DgFunction& g, const SparseMatrix& weight) {
  if (f.coeffs.size() != g.coeffs.size() || f.coeffs.size() != weight.rows()) {
    throw std::invalid_argument("correlation: mismatched spaces");
  }
  const auto apply = [&](const Eigen::VectorXcd& x) {
    const int n = weight.rows();
    Eigen::VectorXd re(n), im(n);
    Eigen::VectorXd xr = x.real(), xi = x.imag();
    weight.multiply(xr.data(), re.data());
    weight.multiply(xi.data(), im.data());
    return Eigen::VectorXcd(re + std::complex<double>(0, 1) * im);
  };
  const Eigen::VectorXcd wg = apply(g.coeffs);
  const Eigen::VectorXcd wf = apply(f.coeffs);
  const double nf = std::sqrt(std::abs(f.coeffs.dot(wf)));
  const double ng = std::sqrt(std::abs(g.coeffs.dot(wg)));
  if (!(nf > 0.0) || !(ng > 0.0)) {
    throw std::invalid_argument("correlation: zero vector");
  }
  return std::abs(f.coeffs.dot(wg)) / (nf * ng);
}

std::string export_coefficients_csv(const DgFunction& f) {
  std::string out = "element,component,mode,re,im\n";
  const DgSpace& s = f.space;
  char buf[128];
  for (int e = 0; e < s.mesh->num_triangles(); ++e) {
    for (int c = 0; c < s.components(); ++c) {
      for (int i = 0; i < s.shape_count(); ++i) {
        const auto v = f.coeffs(s.dof(e, c, i));
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g\n", e, c, i, v.real(), v.imag());
        out += buf;
      }
    }
  }
  return out;
}

std::string export_samples_csv(const DgFunction& f, int subdiv) {
  const DgSpace& s = f.space;
  const TriMesh& mesh = *s.mesh;
  std::vector<Vec2> ref_pts;
  for (int i = 0; i <= subdiv; ++i) {
    for (int j = 0; j <= subdiv - i; ++j) {
      ref_pts.push_back({static_cast<double>(i) / subdiv, static_cast<double>(j) / subdiv});
    }
  }
  const Eigen::MatrixXd val = eval_basis(s.degree, ref_pts);

  std::string out = s.arity == Arity::Scalar ? "element,x,y,re,im\n"
                                             : "element,x,y,re_x,im_x,re_y,im_y\n";
  char buf[192];
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const ElementGeometry g = element_geometry(mesh, e);
    for (size_t q = 0; q < ref_pts.size(); ++q) {
      const Vec2 x = g.map(ref_pts[q]);
      if (s.arity == Arity::Scalar) {
        std::complex<double> v = 0.0;
        for (int i = 0; i < s.shape_count(); ++i) v += f.coeffs(s.dof(e, 0, i)) * val(i, q);
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", e, x.x, x.y,
                      v.real(), v.imag());
      } else {
        std::complex<double> vx = 0.0, vy = 0.0;
        for (int i = 0; i < s.shape_count(); ++i) {
          vx += f.coeffs(s.dof(e, 0, i)) * val(i, q);
          vy += f.coeffs(s.dof(e, 1, i)) * val(i, q);
        }
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e, x.x,
                      x.y, vx.real(), vx.imag(), vy.real(), vy.imag());
      }
      out += buf;
    }
  }
  return out;
}

}  // namespace adg
