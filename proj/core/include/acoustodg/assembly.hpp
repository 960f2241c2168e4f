// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "acoustodg/coefficients.hpp"
#include "acoustodg/space.hpp"
#include "acoustodg/sparse.hpp"

namespace adg {

/// How the rigid-wall condition u.n = 0 enters the displacement form:
///   InteriorOnly - facet terms on interior facets only, as displayed in the
///                  bilinear form;
///   WeakNormal   - boundary facets additionally get the penalty and
///                  consistency terms with the boundary trace conventions
///                  ({w} = w_K, jump = v_K.n), enforcing u.n = 0 weakly.
/// The pressure form always integrates interior facets only (the Neumann
/// condition is natural).
enum class BoundaryMode { InteriorOnly, WeakNormal };

struct DgFormConfig {
  int eps = 1;  // +1 SIP, 0 IIP, -1 NIP
  double a_s = 10.0;
  BoundaryMode boundary_mode = BoundaryMode::WeakNormal;
  int quadrature_degree = 0;  // 0: use 2k+2
};

/// Individual form terms, all with positive orientation (no eps factor on
/// the adjoint consistency term); the named assemble_* functions compose
/// them with the signs of the bilinear form.
struct TermSet {
  bool volume_stiffness = false;  // div-div resp. grad-grad with coefficients
  bool volume_mass = false;
  bool penalty = false;
  bool consistency_primal = false;   // {coeff * der(u)} jump(v)
  bool consistency_adjoint = false;  // {coeff * der(v)} jump(u)

  static TermSet all() { return {true, true, true, true, true}; }
};

/// Stiffness matrix of the displacement form on a vector2 space:
/// volume rho c^2 div.div + rho mass, interior-facet penalty
/// (a_S/h_F) jump(u) jump(v) and consistency terms, with the scalar normal
/// jump of a vector field.
SparseMatrix assemble_stiffness_disp(const DgSpace& space, const CoefficientField& coeff,
                                     const DgFormConfig& cfg);

/// rho-weighted vector mass matrix; block-diagonal SPD.
SparseMatrix assemble_mass_disp(const DgSpace& space, const CoefficientField& coeff);

/// Stiffness matrix of the pressure form on a scalar space:
/// c^2/rho grad.grad + 1/rho mass, penalty (a_Sp/h_F) jump(p).jump(v) and
/// 1/rho {c^2 grad} consistency terms, interior facets only.
SparseMatrix assemble_stiffness_pressure(const DgSpace& space, const CoefficientField& coeff,
                                         const DgFormConfig& cfg);

/// (1/rho)-weighted scalar mass matrix; block-diagonal SPD.
SparseMatrix assemble_mass_pressure(const DgSpace& space, const CoefficientField& coeff);

/// Masked assembly of individual terms (test and analysis hooks).
SparseMatrix assemble_disp_terms(const DgSpace& space, const CoefficientField& coeff,
                                 const DgFormConfig& cfg, const TermSet& terms);
SparseMatrix assemble_pressure_terms(const DgSpace& space, const CoefficientField& coeff,
                                     const DgFormConfig& cfg, const TermSet& terms);

/// Gram matrix of the DG norm: ||div_h v||^2 + ||h_F^{-1/2} jump(v)||^2 + ||v||^2
/// (displacement) or the broken-H1 analogue (pressure). Interior facets only.
SparseMatrix assemble_dg_gram(const DgSpace& space);

}  // namespace adg
