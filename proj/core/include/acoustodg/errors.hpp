// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace adg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (mesh files, density expressions, config files).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Mesh file references a vertex index outside the vertex table.
class DanglingIndexError : public Error {
public:
  using Error::Error;
};

/// Mesh element with zero or numerically degenerate area.
class InvertedElementError : public Error {
public:
  using Error::Error;
};

/// Edge shared by more than two triangles.
class NonManifoldError : public Error {
public:
  using Error::Error;
};

/// A density evaluated to a non-positive value.
class PositivityError : public Error {
public:
  using Error::Error;
};

/// Unknown stabilization preset or density id.
class UnknownIdError : public Error {
public:
  using Error::Error;
};

/// A matrix block expected to be SPD failed its Cholesky factorization.
class SpdFailureError : public Error {
public:
  using Error::Error;
};

/// An iterative solver hit its iteration or restart cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Factorization of K - sigma*M failed (shift too close to an eigenvalue).
class SingularShiftError : public Error {
public:
  using Error::Error;
};

}  // namespace adg
