// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eltri/elementary.hpp"
#include "eltri/matrix.hpp"
#include "eltri/oracle.hpp"

// Block generalization of the elementary-factor calculus: block lower
// triangular matrices with square diagonal blocks of mixed sizes factor into
// one block elementary factor per diagonal block, and the reversed product
// of the factor inverses is the matrix inverse.

namespace eltri {

/// Ordered diagonal block sizes k_1..k_r summing to n.
class BlockPartition {
 public:
  explicit BlockPartition(std::vector<Index> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty())
      throw ArgumentError("BlockPartition: at least one block required");
    offsets_.reserve(sizes_.size());
    total_ = 0;
    for (Index size : sizes_) {
      if (size < 1)
        throw ArgumentError("BlockPartition: block sizes must be positive");
      offsets_.push_back(total_);
      total_ += size;
    }
  }

  Index total() const { return total_; }                      // n
  Index count() const { return static_cast<Index>(sizes_.size()); }  // r
  Index size(Index j) const { return sizes_[static_cast<std::size_t>(j)]; }
  /// Rows/columns before block j (m_j).
  Index offset(Index j) const { return offsets_[static_cast<std::size_t>(j)]; }
  /// Rows/columns after block j (p_j = n - m_j - k_j).
  Index trailing(Index j) const { return total_ - offset(j) - size(j); }
  const std::vector<Index>& sizes() const { return sizes_; }

 private:
  std::vector<Index> sizes_;
  std::vector<Index> offsets_;
  Index total_ = 0;
};

/// A matrix whose entries strictly above the block diagonal are zero,
/// tagged with its partition.
template <MatrixScalar Scalar>
struct BlockTriangularView {
  DenseMatrix<Scalar> matrix;
  BlockPartition partition;

  auto diagonal_block(Index j) const {
    return matrix.block(partition.offset(j), partition.offset(j),
                        partition.size(j), partition.size(j));
  }
};

/// Validates that everything strictly above the block diagonal vanishes.
template <MatrixScalar Scalar>
BlockTriangularView<Scalar> block_triangular_view(DenseMatrix<Scalar> m,
                                                  BlockPartition partition) {
  if (m.rows() != m.cols())
    throw DimensionError("block_triangular_view: matrix must be square");
  if (partition.total() != m.rows())
    throw DimensionError("block_triangular_view: partition sums to " +
                         std::to_string(partition.total()) + ", matrix has " +
                         std::to_string(m.rows()) + " rows");
  for (Index j = 0; j < partition.count(); ++j) {
    const Index row_begin = partition.offset(j);
    const Index row_end = row_begin + partition.size(j);
    for (Index i = row_begin; i < row_end; ++i)
      for (Index c = row_end; c < m.cols(); ++c)
        if (m(i, c) != Scalar(0))
          throw StructureError(
              "block_triangular_view: nonzero entry above the block diagonal "
              "at (" +
                  std::to_string(i) + ", " + std::to_string(c) + ")",
              i, c);
  }
  return BlockTriangularView<Scalar>{std::move(m), std::move(partition)};
}

namespace detail {

// Dense LU factorization with partial pivoting, the elimination engine for
// diagonal blocks. For a 1 x 1 block, solve() performs exactly one division,
// matching the scalar forward-substitution kernel.
template <MatrixScalar Scalar>
class PivotedLu {
 public:
  explicit PivotedLu(DenseMatrix<Scalar> m) : lu_(std::move(m)) {
    const Index n = lu_.rows();
    swaps_.resize(static_cast<std::size_t>(n));
    const double pivot_floor = kPivotThresholdFactor * infinity_norm(lu_);
    for (Index p = 0; p < n; ++p) {
      Index pivot_row = p;
      double pivot_mag = std::abs(lu_(p, p));
      for (Index i = p + 1; i < n; ++i) {
        const double mag = std::abs(lu_(i, p));
        if (mag > pivot_mag) {
          pivot_mag = mag;
          pivot_row = i;
        }
      }
      if (pivot_mag <= pivot_floor)
        throw SingularError("pivoted elimination: singular at step " +
                                std::to_string(p),
                            p);
      if (pivot_row != p) lu_.row(pivot_row).swap(lu_.row(p));
      swaps_[static_cast<std::size_t>(p)] = pivot_row;
      for (Index i = p + 1; i < n; ++i) {
        const Scalar factor = lu_(i, p) / lu_(p, p);
        lu_(i, p) = factor;
        for (Index q = p + 1; q < n; ++q) lu_(i, q) -= factor * lu_(p, q);
      }
    }
  }

  /// Solves M w = rhs for a multi-column right-hand side.
  template <typename Rhs>
  DenseMatrix<Scalar> solve(const Eigen::MatrixBase<Rhs>& rhs) const {
    const Index n = lu_.rows();
    DenseMatrix<Scalar> w = rhs;
    for (Index p = 0; p < n; ++p)
      if (swaps_[static_cast<std::size_t>(p)] != p)
        w.row(p).swap(w.row(swaps_[static_cast<std::size_t>(p)]));
    for (Index p = 0; p < n; ++p)
      for (Index i = p + 1; i < n; ++i)
        for (Index c = 0; c < w.cols(); ++c) w(i, c) -= lu_(i, p) * w(p, c);
    for (Index p = n - 1; p >= 0; --p) {
      for (Index q = p + 1; q < n; ++q)
        for (Index c = 0; c < w.cols(); ++c) w(p, c) -= lu_(p, q) * w(q, c);
      for (Index c = 0; c < w.cols(); ++c) w(p, c) = w(p, c) / lu_(p, p);
    }
    return w;
  }

 private:
  DenseMatrix<Scalar> lu_;
  std::vector<Index> swaps_;
};

}  // namespace detail

/// Block elementary factors E_1..E_r: E_j coincides with the matrix on the
/// columns of diagonal block j and with the identity elsewhere. Their
/// ordered product reproduces the matrix without arithmetic. Factors are
/// materialized densely.
template <MatrixScalar Scalar>
std::vector<DenseMatrix<Scalar>> block_factorize(
    const BlockTriangularView<Scalar>& view) {
  const Index n = view.partition.total();
  std::vector<DenseMatrix<Scalar>> factors;
  factors.reserve(static_cast<std::size_t>(view.partition.count()));
  for (Index j = 0; j < view.partition.count(); ++j) {
    DenseMatrix<Scalar> factor = DenseMatrix<Scalar>::Identity(n, n);
    factor.middleCols(view.partition.offset(j), view.partition.size(j)) =
        view.matrix.middleCols(view.partition.offset(j),
                               view.partition.size(j));
    factors.push_back(std::move(factor));
  }
  return factors;
}

/// Inverse of a block elementary factor:
/// (E_j)^-1 = I - (E_j - I) Diag(I, X_j^-1, I), with the block diagonal
/// multiplier carrying X_j^-1 in block position j and identities elsewhere.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> block_elementary_inverse(const DenseMatrix<Scalar>& factor,
                                             const BlockPartition& partition,
                                             Index j) {
  if (j < 0 || j >= partition.count())
    throw ArgumentError("block_elementary_inverse: block index out of range");
  if (factor.rows() != partition.total() || factor.cols() != partition.total())
    throw DimensionError(
        "block_elementary_inverse: factor does not match the partition");
  const Index n = partition.total();
  const Index offset = partition.offset(j);
  const Index size = partition.size(j);

  DenseMatrix<Scalar> block_inverse;
  try {
    block_inverse =
        oracle_inverse<Scalar>(factor.block(offset, offset, size, size));
  } catch (const SingularError&) {
    throw SingularError("block_elementary_inverse: diagonal block " +
                            std::to_string(j) + " is singular",
                        j);
  }
  DenseMatrix<Scalar> multiplier = DenseMatrix<Scalar>::Identity(n, n);
  multiplier.block(offset, offset, size, size) = block_inverse;
  return DenseMatrix<Scalar>::Identity(n, n) -
         mat_mul(factor - DenseMatrix<Scalar>::Identity(n, n), multiplier);
}

/// Inverse via the reversed product of block factor inverses, applied one
/// block column at a time: block column J of the inverse is
/// (E_r)^-1 ... (E_J)^-1 restricted to the identity slab of block J, since
/// every earlier factor inverse fixes that slab. Diagonal blocks are
/// eliminated with partial pivoting (factored once, reused across block
/// columns). For the all-ones partition the scalar operation sequence is
/// identical to invert_triangular, so the outputs match bit for bit.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> invert_block_triangular(
    const BlockTriangularView<Scalar>& view) {
  const BlockPartition& partition = view.partition;
  const DenseMatrix<Scalar>& a = view.matrix;
  const Index n = partition.total();
  const Index blocks = partition.count();

  std::vector<std::optional<detail::PivotedLu<Scalar>>> factored(
      static_cast<std::size_t>(blocks));
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(n, n);

  for (Index bj = 0; bj < blocks; ++bj) {
    const Index col_offset = partition.offset(bj);
    const Index width = partition.size(bj);
    out.block(col_offset, col_offset, width, width) =
        DenseMatrix<Scalar>::Identity(width, width);
    for (Index bk = bj; bk < blocks; ++bk) {
      const Index row_offset = partition.offset(bk);
      const Index block_size = partition.size(bk);
      auto& lu = factored[static_cast<std::size_t>(bk)];
      if (!lu) {
        try {
          lu.emplace(DenseMatrix<Scalar>(
              a.block(row_offset, row_offset, block_size, block_size)));
        } catch (const SingularError&) {
          throw SingularError("invert_block_triangular: diagonal block " +
                                  std::to_string(bk) + " is singular",
                              bk);
        }
      }
      const DenseMatrix<Scalar> solved =
          lu->solve(out.block(row_offset, col_offset, block_size, width));
      out.block(row_offset, col_offset, block_size, width) = solved;
      const Index below = n - row_offset - block_size;
      if (below > 0)
        out.block(row_offset + block_size, col_offset, below, width) -=
            mat_mul(a.block(row_offset + block_size, row_offset, below,
                            block_size),
                    solved);
    }
  }
  return out;
}

}  // namespace eltri
