// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "acoustodg/analysis.hpp"

namespace adg {

// Machine-readable exports. JSON key order and float formatting are
// deterministic: identical inputs give byte-identical output.
std::string to_json(const SpuriousReport& r);
std::string to_json(const ConvergenceReport& r);
std::string to_json(const BenchReport& r);

std::string to_csv(const SpuriousReport& r);
std::string to_csv(const ConvergenceReport& r);
std::string to_csv(const BenchReport& r);

// Aligned-column tables for standard output.
std::string to_text(const SpuriousReport& r);
std::string to_text(const ConvergenceReport& r);
std::string to_text(const BenchReport& r);

/// Log-log plot of |lambda_h - lambda_extr| against dof count, one polyline
/// per eigenvalue index, with a reference-slope triangle.
std::string convergence_svg(const ConvergenceReport& r);

}  // namespace adg
