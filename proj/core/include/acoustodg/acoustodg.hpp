// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "acoustodg/analysis.hpp"
#include "acoustodg/assembly.hpp"
#include "acoustodg/basis.hpp"
#include "acoustodg/coefficients.hpp"
#include "acoustodg/eigensolve.hpp"
#include "acoustodg/errors.hpp"
#include "acoustodg/mesh.hpp"
#include "acoustodg/postprocess.hpp"
#include "acoustodg/quadrature.hpp"
#include "acoustodg/reports.hpp"
#include "acoustodg/space.hpp"
#include "acoustodg/sparse.hpp"
