// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "acoustodg/coefficients.hpp"
#include "acoustodg/space.hpp"
#include "acoustodg/sparse.hpp"

namespace adg {

/// Elementwise L2 projection of -rho c^2 div(u_h) onto scalar P_k on the
/// same mesh: the pressure that accompanies a displacement eigenmode.
DgFunction pressure_from_displacement(const DgFunction& u_h, const CoefficientField& coeff);

/// Elementwise L2 projection of grad(p_h)/(omega^2 rho) onto vector2 P_k.
/// omega^2 near zero is rejected: the constant-pressure mode carries no
/// displacement.
DgFunction displacement_from_pressure(const DgFunction& p_h, double omega2,
                                      const CoefficientField& coeff);

/// |f^H W g| / (||f||_W ||g||_W) in [0,1]; W is a mass (SPD) matrix on the
/// shared space. The modulus makes the result invariant under the sign or
/// phase of either input.
double correlation(const DgFunction& f, const DgFunction& g, const SparseMatrix& weight);

/// Coefficient and sampled-value CSV export of a discrete function; samples
/// are taken on a per-element barycentric lattice with `subdiv+1` points per
/// edge.
std::string export_coefficients_csv(const DgFunction& f);
std::string export_samples_csv(const DgFunction& f, int subdiv = 4);

}  // namespace adg
