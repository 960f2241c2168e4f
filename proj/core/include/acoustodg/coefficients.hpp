// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <string>

namespace adg {

/// Density field rho(x,y) > 0 plus the (constant) sound speed. Fields are
/// immutable and callable concurrently.
struct CoefficientField {
  std::function<double(double, double)> rho;
  double c = 1.0;
  std::string id;  // builtin id or the source expression

  double operator()(double x, double y) const { return rho(x, y); }
};

/// min/max of the density over a sampled bounding box.
struct DensityBounds {
  double lower = 0.0;  // rho_min
  double upper = 0.0;  // rho_max
  int samples_per_side = 0;
};

/// Builtin densities:
///   const1       1
///   rho1         1/(x^2+y^2+1)
///   rho2, expxy  e^(xy+1)
///   sincos       e^(sin(pi x) cos(pi y))
///   sincos-half  e^(sin(pi x/2) cos(pi y/2))
///   coscos-inv   1/(cos(pi x) cos(pi y) + 2)
CoefficientField builtin_density(const std::string& id, double c = 1.0);

/// Compile a density from the tiny expression language: operators + - * / ^,
/// functions sin cos exp, constants pi e, variables x y.
CoefficientField parse_density(const std::string& expr, double c = 1.0);

/// Extrema of rho over an m-by-m endpoint-inclusive grid on the box
/// {xmin, ymin, xmax, ymax}. Throws PositivityError naming the point if a
/// non-positive sample is found. Requires m >= 64.
DensityBounds density_bounds(const CoefficientField& field,
                             const std::array<double, 4>& bbox, int m = 512);

/// Stabilization parameter a_S = (preset expression) * k^2. Preset ids and
/// their expressions (rb = upper density bound, lb = lower):
///   raw       a           sum1     rb+lb        plus1-2   2(rb+1)
///   max2      2rb         sum2     2(rb+lb)     plus1-4   4(rb+1)
///   max4      4rb         sum4     4(rb+lb)     plus1-8   8(rb+1)
///   max8      8rb                               plus1-10  10(rb+1)
/// Spellings like "8rhobar" (= max8), "raw4" (= raw with a=4) and
/// "plus1-<m>" for any m are also accepted.
double stabilization_preset(const std::string& name, const DensityBounds& bounds,
                            int k, double base_a);

}  // namespace adg
