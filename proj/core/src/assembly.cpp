// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/assembly.hpp"

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "acoustodg/element_geometry.hpp"
#include "acoustodg/parallel.hpp"
#include "acoustodg/quadrature.hpp"

namespace adg {

namespace {

// Signed weight per form term; 0 skips the term entirely.
struct TermWeights {
  double volume_stiffness = 0.0;
  double volume_mass = 0.0;
  double penalty = 0.0;
  double consistency_primal = 0.0;
  double consistency_adjoint = 0.0;

  bool any_volume() const { return volume_stiffness != 0.0 || volume_mass != 0.0; }
  bool any_facet() const {
    return penalty != 0.0 || consistency_primal != 0.0 || consistency_adjoint != 0.0;
  }
};

// Reference-element basis tables at volume and facet quadrature points.
// Facet tables exist per (local edge, orientation); column q of every table
// corresponds to the same global facet parameter s_q, so traces from the two
// owners line up point by point.
struct RefTables {
  int nk = 0;
  QuadratureRule vol;
  Eigen::MatrixXd vol_val;
  GradTable vol_grad;
  QuadratureRule edge;
  Eigen::MatrixXd edge_val[3][2];
  GradTable edge_grad[3][2];
};

RefTables build_tables(int k, int quad_degree) {
  const int d = quad_degree > 0 ? quad_degree : 2 * k + 2;
  RefTables t;
  t.nk = basis_dimension(k);
  t.vol = quad_triangle(d);
  t.vol_val = eval_basis(k, t.vol.points);
  t.vol_grad = eval_grad(k, t.vol.points);
  t.edge = quad_edge(d);

  constexpr Vec2 ref_corner[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int e = 0; e < 3; ++e) {
    const Vec2 pa = ref_corner[kLocalEdgeVertices[e][0]];
    const Vec2 pb = ref_corner[kLocalEdgeVertices[e][1]];
    for (int orient = 0; orient < 2; ++orient) {
      std::vector<Vec2> pts(t.edge.points.size());
      for (size_t q = 0; q < pts.size(); ++q) {
        const double s = orient == 0 ? t.edge.points[q].x : 1.0 - t.edge.points[q].x;
        pts[q] = pa + (pb - pa) * s;
      }
      t.edge_val[e][orient] = eval_basis(k, pts);
      t.edge_grad[e][orient] = eval_grad(k, pts);
    }
  }
  return t;
}

struct FacetSide {
  int element = -1;
  int orient = 0;
  int local_edge = 0;
  double sign = 1.0;  // jump sign: +1 for owner[0], -1 for owner[1]
  double avg = 0.5;   // average weight: 0.5 interior, 1.0 boundary
};

struct FacetBlocks {
  int sides = 0;
  std::array<int, 2> element{-1, -1};
  Eigen::MatrixXd block[2][2];
};

void check_vector2(const DgSpace& space, const char* who) {
  if (space.arity != Arity::Vector2) {
    throw std::invalid_argument(std::string(who) + ": space must have vector2 arity");
  }
}

void check_scalar(const DgSpace& space, const char* who) {
  if (space.arity != Arity::Scalar) {
    throw std::invalid_argument(std::string(who) + ": space must have scalar arity");
  }
}

void check_cfg(const DgFormConfig& cfg) {
  if (!(cfg.a_s > 0.0)) throw std::invalid_argument("stabilization parameter must be positive");
  if (cfg.eps != -1 && cfg.eps != 0 && cfg.eps != 1) {
    throw std::invalid_argument("eps must be one of -1, 0, +1");
  }
}

// Shared assembly driver for both formulations: scalar_form selects the
// pressure (grad-grad, 1/rho weights, scalar unknowns) term definitions,
// otherwise the displacement (div-div, rho weights, vector2) ones.
SparseMatrix assemble_weighted(const DgSpace& space, const CoefficientField& coeff,
                               const DgFormConfig& cfg, const TermWeights& w,
                               bool scalar_form) {
  const TriMesh& mesh = *space.mesh;
  const int k = space.degree;
  const int nk = space.shape_count();
  const int bs = space.block_size();
  const RefTables tables = build_tables(k, cfg.quadrature_degree);
  const int nq = static_cast<int>(tables.vol.points.size());
  const int nqe = static_cast<int>(tables.edge.points.size());
  const double c2 = coeff.c * coeff.c;

  // --- element volume blocks ---
  std::vector<Eigen::MatrixXd> volume_blocks(w.any_volume() ? mesh.num_triangles() : 0);
  if (w.any_volume()) {
    parallel_for(mesh.num_triangles(), [&](int t) {
      const ElementGeometry g = element_geometry(mesh, t);
      const auto [gx, gy] = physical_grads(tables.vol_grad, g);
      Eigen::VectorXd rho(nq);
      for (int q = 0; q < nq; ++q) {
        const Vec2 x = g.map(tables.vol.points[q]);
        rho(q) = coeff(x.x, x.y);
      }
      Eigen::VectorXd wdet(nq);
      for (int q = 0; q < nq; ++q) wdet(q) = tables.vol.weights[q] * g.det;
      Eigen::MatrixXd block = Eigen::MatrixXd::Zero(bs, bs);

      if (scalar_form) {
        if (w.volume_stiffness != 0.0) {
          const Eigen::VectorXd wq =
              (w.volume_stiffness * c2 * wdet.array() / rho.array()).matrix();
          block += gx * wq.asDiagonal() * gx.transpose() +
                   gy * wq.asDiagonal() * gy.transpose();
        }
        if (w.volume_mass != 0.0) {
          const Eigen::VectorXd wq = (w.volume_mass * wdet.array() / rho.array()).matrix();
          block += tables.vol_val * wq.asDiagonal() * tables.vol_val.transpose();
        }
      } else {
        if (w.volume_stiffness != 0.0) {
          // div(phi_i e_a) = d(phi_i)/dx_a
          const Eigen::VectorXd wq =
              (w.volume_stiffness * c2 * wdet.array() * rho.array()).matrix();
          const Eigen::MatrixXd* g_of[2] = {&gx, &gy};
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              block.block(a * nk, b * nk, nk, nk) +=
                  (*g_of[a]) * wq.asDiagonal() * g_of[b]->transpose();
            }
          }
        }
        if (w.volume_mass != 0.0) {
          const Eigen::VectorXd wq = (w.volume_mass * wdet.array() * rho.array()).matrix();
          const Eigen::MatrixXd m =
              tables.vol_val * wq.asDiagonal() * tables.vol_val.transpose();
          for (int a = 0; a < 2; ++a) block.block(a * nk, a * nk, nk, nk) += m;
        }
      }
      volume_blocks[t] = std::move(block);
    });
  }

  // --- facet blocks ---
  std::vector<FacetBlocks> facet_blocks(w.any_facet() ? mesh.num_facets() : 0);
  if (w.any_facet()) {
    parallel_for(mesh.num_facets(), [&](int fi) {
      const Facet& f = mesh.facets[fi];
      const bool interior = f.kind == FacetKind::Interior;
      // Pressure: natural Neumann condition, interior facets only.
      // Displacement: boundary terms only in weak-normal mode.
      if (!interior && (scalar_form || cfg.boundary_mode == BoundaryMode::InteriorOnly)) {
        return;
      }

      FacetBlocks fb;
      fb.sides = interior ? 2 : 1;
      FacetSide side[2];
      for (int s = 0; s < fb.sides; ++s) {
        side[s].element = f.owner[s];
        side[s].local_edge = f.local_edge[s];
        side[s].sign = s == 0 ? 1.0 : -1.0;
        side[s].avg = interior ? 0.5 : 1.0;
        const auto& tri = mesh.triangles[f.owner[s]];
        const int first = tri[kLocalEdgeVertices[f.local_edge[s]][0]];
        side[s].orient = first == f.vertices[0] ? 0 : 1;
        fb.element[s] = f.owner[s];
      }

      const Vec2 va = mesh.vertices[f.vertices[0]];
      const Vec2 vb = mesh.vertices[f.vertices[1]];
      Eigen::VectorXd rho(nqe);
      for (int q = 0; q < nqe; ++q) {
        const Vec2 x = va + (vb - va) * tables.edge.points[q].x;
        rho(q) = coeff(x.x, x.y);
      }
      const double n_of[2] = {f.normal.x, f.normal.y};
      const double hf = f.length;

      const Eigen::MatrixXd* val[2] = {nullptr, nullptr};
      Eigen::MatrixXd grad[2][2];  // [side][component]: physical gradients
      for (int s = 0; s < fb.sides; ++s) {
        const ElementGeometry g = element_geometry(mesh, side[s].element);
        val[s] = &tables.edge_val[side[s].local_edge][side[s].orient];
        auto [gx, gy] = physical_grads(tables.edge_grad[side[s].local_edge][side[s].orient], g);
        grad[s][0] = std::move(gx);
        grad[s][1] = std::move(gy);
      }

      // edge weights: ds = h_F dt on [0,1]
      Eigen::VectorXd wq_pen(nqe), wq_cons(nqe);
      for (int q = 0; q < nqe; ++q) {
        // penalty carries a_S/h_F which cancels against ds = h_F dt
        wq_pen(q) = tables.edge.weights[q] * cfg.a_s;
        const double coeff_q = scalar_form ? c2 / rho(q) : rho(q) * c2;
        wq_cons(q) = tables.edge.weights[q] * hf * coeff_q;
      }

      for (int sp = 0; sp < fb.sides; ++sp) {
        for (int sq = 0; sq < fb.sides; ++sq) {
          Eigen::MatrixXd block = Eigen::MatrixXd::Zero(bs, bs);

          if (scalar_form) {
            // jump(p).jump(v) = (p1-p2)(v1-v2); {c^2 grad}.n with 1/rho weight
            if (w.penalty != 0.0) {
              block += w.penalty * side[sp].sign * side[sq].sign *
                       ((*val[sp]) * wq_pen.asDiagonal() * val[sq]->transpose());
            }
            if (w.consistency_primal != 0.0 || w.consistency_adjoint != 0.0) {
              const Eigen::MatrixXd ndp = n_of[0] * grad[sp][0] + n_of[1] * grad[sp][1];
              const Eigen::MatrixXd ndq = n_of[0] * grad[sq][0] + n_of[1] * grad[sq][1];
              if (w.consistency_primal != 0.0) {
                block += w.consistency_primal * side[sp].sign * side[sq].avg *
                         ((*val[sp]) * wq_cons.asDiagonal() * ndq.transpose());
              }
              if (w.consistency_adjoint != 0.0) {
                block += w.consistency_adjoint * side[sq].sign * side[sp].avg *
                         (ndp * wq_cons.asDiagonal() * val[sq]->transpose());
              }
            }
          } else {
            if (w.penalty != 0.0) {
              const Eigen::MatrixXd base =
                  w.penalty * side[sp].sign * side[sq].sign *
                  ((*val[sp]) * wq_pen.asDiagonal() * val[sq]->transpose());
              for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                  block.block(a * nk, b * nk, nk, nk) += n_of[a] * n_of[b] * base;
                }
              }
            }
            if (w.consistency_primal != 0.0) {
              // {rho c^2 div u} jump(v): trial div on side sq
              for (int b = 0; b < 2; ++b) {
                const Eigen::MatrixXd vd =
                    (*val[sp]) * wq_cons.asDiagonal() * grad[sq][b].transpose();
                for (int a = 0; a < 2; ++a) {
                  block.block(a * nk, b * nk, nk, nk) +=
                      w.consistency_primal * side[sp].sign * side[sq].avg * n_of[a] * vd;
                }
              }
            }
            if (w.consistency_adjoint != 0.0) {
              // {rho c^2 div v} jump(u): test div on side sp
              for (int a = 0; a < 2; ++a) {
                const Eigen::MatrixXd dv =
                    grad[sp][a] * wq_cons.asDiagonal() * val[sq]->transpose();
                for (int b = 0; b < 2; ++b) {
                  block.block(a * nk, b * nk, nk, nk) +=
                      w.consistency_adjoint * side[sq].sign * side[sp].avg * n_of[b] * dv;
                }
              }
            }
          }
          fb.block[sp][sq] = std::move(block);
        }
      }
      facet_blocks[fi] = std::move(fb);
    });
  }

  // --- deterministic reduction: elements in index order, then facets ---
  std::vector<Eigen::Triplet<double>> triplets;
  {
    size_t cap = volume_blocks.size() * bs * bs;
    if (!facet_blocks.empty()) cap += facet_blocks.size() * 4 * bs * bs;
    triplets.reserve(cap);
  }
  for (int t = 0; t < static_cast<int>(volume_blocks.size()); ++t) {
    const auto& block = volume_blocks[t];
    const int base = space.block_start(t);
    for (int i = 0; i < bs; ++i) {
      for (int j = 0; j < bs; ++j) triplets.emplace_back(base + i, base + j, block(i, j));
    }
  }
  for (const auto& fb : facet_blocks) {
    for (int sp = 0; sp < fb.sides; ++sp) {
      for (int sq = 0; sq < fb.sides; ++sq) {
        const auto& block = fb.block[sp][sq];
        const int rbase = space.block_start(fb.element[sp]);
        const int cbase = space.block_start(fb.element[sq]);
        for (int i = 0; i < bs; ++i) {
          for (int j = 0; j < bs; ++j) {
            triplets.emplace_back(rbase + i, cbase + j, block(i, j));
          }
        }
      }
    }
  }
  return SparseMatrix::from_triplets(space.ndof(), triplets);
}

TermWeights to_weights(const TermSet& terms) {
  TermWeights w;
  w.volume_stiffness = terms.volume_stiffness ? 1.0 : 0.0;
  w.volume_mass = terms.volume_mass ? 1.0 : 0.0;
  w.penalty = terms.penalty ? 1.0 : 0.0;
  w.consistency_primal = terms.consistency_primal ? 1.0 : 0.0;
  w.consistency_adjoint = terms.consistency_adjoint ? 1.0 : 0.0;
  return w;
}

SparseMatrix compose_stiffness(const DgSpace& space, const CoefficientField& coeff,
                               const DgFormConfig& cfg, bool scalar_form) {
  check_cfg(cfg);
  TermWeights w;
  w.volume_stiffness = 1.0;
  w.volume_mass = 1.0;
  w.penalty = 1.0;
  w.consistency_primal = -1.0;
  w.consistency_adjoint = -static_cast<double>(cfg.eps);
  return assemble_weighted(space, coeff, cfg, w, scalar_form);
}

}  // namespace

SparseMatrix assemble_stiffness_disp(const DgSpace& space, const CoefficientField& coeff,
                                     const DgFormConfig& cfg) {
  check_vector2(space, "assemble_stiffness_disp");
  return compose_stiffness(space, coeff, cfg, /*scalar_form=*/false);
}

SparseMatrix assemble_mass_disp(const DgSpace& space, const CoefficientField& coeff) {
  check_vector2(space, "assemble_mass_disp");
  TermWeights w;
  w.volume_mass = 1.0;
  return assemble_weighted(space, coeff, DgFormConfig{}, w, /*scalar_form=*/false);
}

SparseMatrix assemble_stiffness_pressure(const DgSpace& space, const CoefficientField& coeff,
                                         const DgFormConfig& cfg) {
  check_scalar(space, "assemble_stiffness_pressure");
  return compose_stiffness(space, coeff, cfg, /*scalar_form=*/true);
}

SparseMatrix assemble_mass_pressure(const DgSpace& space, const CoefficientField& coeff) {
  check_scalar(space, "assemble_mass_pressure");
  TermWeights w;
  w.volume_mass = 1.0;
  return assemble_weighted(space, coeff, DgFormConfig{}, w, /*scalar_form=*/true);
}

SparseMatrix assemble_disp_terms(const DgSpace& space, const CoefficientField& coeff,
                                 const DgFormConfig& cfg, const TermSet& terms) {
  check_vector2(space, "assemble_disp_terms");
  check_cfg(cfg);
  return assemble_weighted(space, coeff, cfg, to_weights(terms), /*scalar_form=*/false);
}

SparseMatrix assemble_pressure_terms(const DgSpace& space, const CoefficientField& coeff,
                                     const DgFormConfig& cfg, const TermSet& terms) {
  check_scalar(space, "assemble_pressure_terms");
  check_cfg(cfg);
  return assemble_weighted(space, coeff, cfg, to_weights(terms), /*scalar_form=*/true);
}

SparseMatrix assemble_dg_gram(const DgSpace& space) {
  const CoefficientField unit = builtin_density("const1", 1.0);
  DgFormConfig cfg;
  cfg.a_s = 1.0;
  cfg.boundary_mode = BoundaryMode::InteriorOnly;
  TermWeights w;
  w.volume_stiffness = 1.0;  // div-div resp. grad-grad with unit coefficients
  w.volume_mass = 1.0;
  w.penalty = 1.0;  // a_s = 1: exactly the h_F^{-1/2} jump seminorm
  return assemble_weighted(space, unit, cfg, w, space.arity == Arity::Scalar);
}

}  // namespace adg
