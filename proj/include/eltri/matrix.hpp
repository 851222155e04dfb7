// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <type_traits>
#include <vector>

#include "eltri/errors.hpp"

namespace eltri {

/// The library is generic over exactly two entry types: real and complex
/// double precision. Mixed-scalar expressions do not compile.
template <typename T>
concept MatrixScalar =
    std::same_as<T, double> || std::same_as<T, std::complex<double>>;

using Index = Eigen::Index;

/// Dense row-major matrix, the carrier type for every computation.
template <MatrixScalar Scalar>
using DenseMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <MatrixScalar Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;
using RealVector = DenseVector<double>;
using ComplexVector = DenseVector<std::complex<double>>;

/// Default relative tolerance for approximate matrix comparison.
inline constexpr double kDefaultTolerance = 1e-10;

/// Magnitudes at or below this are treated as exact zeros when deciding
/// whether a diagonal entry is invertible (underflow guard).
inline constexpr double kSingularFloor = 1e-300;

template <MatrixScalar Scalar>
bool is_zero(const Scalar& value, double tol) {
  return std::abs(value) <= tol;
}

/// The n x n shift matrix L: ones on the first subdiagonal, zeros elsewhere.
/// Right-multiplying by L shifts a matrix one column to the left; L^n = 0.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> shift_matrix(Index n) {
  if (n < 1) throw ArgumentError("shift_matrix: size must be positive");
  DenseMatrix<Scalar> shift = DenseMatrix<Scalar>::Zero(n, n);
  for (Index k = 0; k + 1 < n; ++k) shift(k + 1, k) = Scalar(1);
  return shift;
}

/// Matrix product with a fixed summation order: every output entry is
/// accumulated over the inner index from left to right, so identical inputs
/// give bit-identical results on every run.
template <typename Lhs, typename Rhs>
DenseMatrix<typename Lhs::Scalar> mat_mul(const Eigen::MatrixBase<Lhs>& x,
                                          const Eigen::MatrixBase<Rhs>& y) {
  static_assert(std::is_same_v<typename Lhs::Scalar, typename Rhs::Scalar>,
                "mat_mul operands must share one scalar type");
  using Scalar = typename Lhs::Scalar;
  if (x.cols() != y.rows())
    throw DimensionError("mat_mul: inner dimensions disagree (" +
                         std::to_string(x.cols()) + " vs " +
                         std::to_string(y.rows()) + ")");
  const auto& lhs = x.derived();
  const auto& rhs = y.derived();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(x.rows(), y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index k = 0; k < x.cols(); ++k) {
      const Scalar left = lhs(i, k);
      for (Index j = 0; j < y.cols(); ++j) out(i, j) += left * rhs(k, j);
    }
  }
  return out;
}

template <typename Derived>
double frobenius_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

/// Maximum absolute row sum.
template <typename Derived>
double infinity_norm(const Eigen::MatrixBase<Derived>& m) {
  double best = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    double row_sum = 0.0;
    for (Index j = 0; j < m.cols(); ++j) row_sum += std::abs(m(i, j));
    if (row_sum > best) best = row_sum;
  }
  return best;
}

/// True iff ||x - y||_F <= tol * max(1, ||y||_F).
template <typename Lhs, typename Rhs>
bool approx_eq(const Eigen::MatrixBase<Lhs>& x, const Eigen::MatrixBase<Rhs>& y,
               double tol = kDefaultTolerance) {
  static_assert(std::is_same_v<typename Lhs::Scalar, typename Rhs::Scalar>,
                "approx_eq operands must share one scalar type");
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("approx_eq: shapes disagree");
  return frobenius_norm(x.derived() - y.derived()) <=
         tol * std::max(1.0, frobenius_norm(y));
}

template <typename Derived>
bool is_lower_triangular(const Eigen::MatrixBase<Derived>& m, double tol = 0.0) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol) return false;
  return true;
}

template <typename Derived>
bool is_identity(const Eigen::MatrixBase<Derived>& m, double tol = 0.0) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const Scalar want = i == j ? Scalar(1) : Scalar(0);
      if (std::abs(m(i, j) - want) > tol) return false;
    }
  return true;
}

/// True iff every entry strictly above the k-th superdiagonal vanishes,
/// i.e. m(i, j) = 0 whenever j - i > k. Does not test strictness of the
/// band itself.
template <typename Derived>
bool is_k_hessenberg(const Eigen::MatrixBase<Derived>& m, Index k,
                     double tol = 0.0) {
  if (m.rows() != m.cols() || k < 0) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + k + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol) return false;
  return true;
}

/// Row/column split sizes for block extraction; each list must sum to the
/// corresponding matrix dimension.
struct BlockSpec {
  std::vector<Index> row_splits;
  std::vector<Index> col_splits;
};

template <MatrixScalar Scalar>
using BlockGrid = std::vector<std::vector<DenseMatrix<Scalar>>>;

/// Assembles a grid of blocks into one matrix. Blocks in a grid row must
/// share their height and blocks in a grid column their width.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> block_compose(const BlockGrid<Scalar>& blocks) {
  if (blocks.empty() || blocks.front().empty())
    throw DimensionError("block_compose: empty grid");
  const std::size_t grid_cols = blocks.front().size();
  Index total_rows = 0;
  std::vector<Index> col_widths(grid_cols, -1);
  for (const auto& grid_row : blocks) {
    if (grid_row.size() != grid_cols)
      throw DimensionError("block_compose: ragged grid");
    const Index height = grid_row.front().rows();
    for (std::size_t j = 0; j < grid_cols; ++j) {
      if (grid_row[j].rows() != height)
        throw DimensionError("block_compose: inconsistent block heights");
      if (col_widths[j] < 0)
        col_widths[j] = grid_row[j].cols();
      else if (grid_row[j].cols() != col_widths[j])
        throw DimensionError("block_compose: inconsistent block widths");
    }
    total_rows += height;
  }
  Index total_cols = 0;
  for (Index w : col_widths) total_cols += w;

  DenseMatrix<Scalar> out(total_rows, total_cols);
  Index row_offset = 0;
  for (const auto& grid_row : blocks) {
    Index col_offset = 0;
    for (const auto& block : grid_row) {
      out.block(row_offset, col_offset, block.rows(), block.cols()) = block;
      col_offset += block.cols();
    }
    row_offset += grid_row.front().rows();
  }
  return out;
}

/// Cuts a matrix into the grid of blocks described by `spec`. Extracting and
/// recomposing with the same spec round-trips exactly.
template <MatrixScalar Scalar>
BlockGrid<Scalar> block_extract(const DenseMatrix<Scalar>& m,
                                const BlockSpec& spec) {
  Index row_sum = 0;
  Index col_sum = 0;
  for (Index r : spec.row_splits) {
    if (r < 1) throw ArgumentError("block_extract: splits must be positive");
    row_sum += r;
  }
  for (Index c : spec.col_splits) {
    if (c < 1) throw ArgumentError("block_extract: splits must be positive");
    col_sum += c;
  }
  if (spec.row_splits.empty() || spec.col_splits.empty() ||
      row_sum != m.rows() || col_sum != m.cols())
    throw DimensionError("block_extract: splits do not cover the matrix");

  BlockGrid<Scalar> grid;
  grid.reserve(spec.row_splits.size());
  Index row_offset = 0;
  for (Index height : spec.row_splits) {
    std::vector<DenseMatrix<Scalar>> grid_row;
    grid_row.reserve(spec.col_splits.size());
    Index col_offset = 0;
    for (Index width : spec.col_splits) {
      grid_row.emplace_back(m.block(row_offset, col_offset, height, width));
      col_offset += width;
    }
    grid.push_back(std::move(grid_row));
    row_offset += height;
  }
  return grid;
}

}  // namespace eltri
