// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "eltri/matrix.hpp"

// Reference implementations used to cross-check the elementary-factor
// algorithms. They must stay independent of those code paths: separate loops,
// separate pivoting, no shared kernels.

namespace eltri {

/// Relative pivot threshold: a pivot of magnitude <= this factor times the
/// infinity norm of the input counts as singular.
inline constexpr double kPivotThresholdFactor = 1e-12;

/// Divided-difference nodes closer than this are rejected as coincident.
inline constexpr double kMinNodeSeparation = 1e-9;

/// Gauss-Jordan elimination with partial pivoting on the augmented system
/// [M | I]. Throws SingularError with the elimination step when a pivot
/// falls below the threshold.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> oracle_inverse(const DenseMatrix<Scalar>& m) {
  if (m.rows() != m.cols())
    throw DimensionError("oracle_inverse: matrix must be square");
  const Index n = m.rows();
  DenseMatrix<Scalar> work(n, 2 * n);
  work.leftCols(n) = m;
  work.rightCols(n) = DenseMatrix<Scalar>::Identity(n, n);

  const double pivot_floor = kPivotThresholdFactor * infinity_norm(m);
  for (Index step = 0; step < n; ++step) {
    Index pivot_row = step;
    double pivot_mag = std::abs(work(step, step));
    for (Index r = step + 1; r < n; ++r) {
      const double mag = std::abs(work(r, step));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag <= pivot_floor)
      throw SingularError(
          "oracle_inverse: matrix is singular at elimination step " +
              std::to_string(step),
          step);
    if (pivot_row != step) work.row(pivot_row).swap(work.row(step));
    work.row(step) /= work(step, step);
    for (Index r = 0; r < n; ++r) {
      if (r == step) continue;
      const Scalar factor = work(r, step);
      if (factor != Scalar(0)) work.row(r) -= factor * work.row(step);
    }
  }
  return work.rightCols(n);
}

/// m-fold repeated product, multiplied left to right; exponent 0 gives I.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> oracle_power(const DenseMatrix<Scalar>& m, long exponent) {
  if (m.rows() != m.cols())
    throw DimensionError("oracle_power: matrix must be square");
  if (exponent < 0)
    throw ArgumentError("oracle_power: exponent must be nonnegative");
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(m.rows(), m.rows());
  for (long i = 0; i < exponent; ++i) out = mat_mul(out, m);
  return out;
}

/// Classical recursive divided-difference table for f(t) = t^degree at
/// pairwise distinct nodes. Coincident nodes (closer than
/// kMinNodeSeparation) are rejected; this oracle does not handle confluence.
template <MatrixScalar Scalar>
Scalar oracle_divided_difference(const std::vector<Scalar>& nodes,
                                 long degree) {
  if (nodes.empty())
    throw ArgumentError("oracle_divided_difference: no nodes given");
  if (degree < 0)
    throw ArgumentError("oracle_divided_difference: degree must be nonnegative");
  const std::size_t count = nodes.size();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= kMinNodeSeparation)
        throw ArgumentError(
            "oracle_divided_difference: nodes " + std::to_string(i) + " and " +
            std::to_string(j) + " coincide");

  std::vector<Scalar> table(count);
  for (std::size_t i = 0; i < count; ++i) {
    Scalar value = Scalar(1);
    for (long e = 0; e < degree; ++e) value *= nodes[i];
    table[i] = value;
  }
  for (std::size_t level = 1; level < count; ++level)
    for (std::size_t i = 0; i + level < count; ++i)
      table[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i]);
  return table[0];
}

}  // namespace eltri
