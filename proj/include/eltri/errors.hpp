// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eltri {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is out of its documented domain (bad size, negative exponent,
/// empty index set, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix violates a structural requirement (triangularity, band pattern,
/// strictness of a Hessenberg band, ...). Carries the first offending
/// position when one exists; -1 means not applicable.
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what, std::ptrdiff_t row = -1,
                          std::ptrdiff_t col = -1)
      : Error(what), row_(row), col_(col) {}

  std::ptrdiff_t row() const noexcept { return row_; }
  std::ptrdiff_t col() const noexcept { return col_; }

 private:
  std::ptrdiff_t row_;
  std::ptrdiff_t col_;
};

/// A diagonal entry, pivot, factor, or diagonal block is singular.
/// `index()` identifies the offending column/row/block/elimination step.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, std::ptrdiff_t index)
      : Error(what), index_(index) {}

  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

/// An operation refused to run because its cost is exponential in the input
/// size and the input exceeds the configured guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// A matrix file could not be read or parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace eltri
