// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "eltri/elementary.hpp"
#include "eltri/matrix.hpp"
#include "eltri/oracle.hpp"

// Strict lower k-Hessenberg matrices: everything above the k-th
// superdiagonal vanishes and the k-th superdiagonal itself is nonzero.
// Splitting off the first k columns leaves an invertible lower triangular
// block, which yields an explicit inverse formula and an embedding into a
// larger triangular matrix.

namespace eltri {

/// A validated n x n strict lower k-Hessenberg matrix.
template <MatrixScalar Scalar>
struct HessenbergView {
  DenseMatrix<Scalar> matrix;
  Index bandwidth = 1;  // k

  Index size() const { return matrix.rows(); }
  Index triangular_size() const { return matrix.rows() - bandwidth; }  // m
};

/// Block decomposition of a strict k-Hessenberg matrix H with m = n - k:
///
///   H = [ left    triangular ]   left: m x k, triangular: m x m (lower),
///       [ corner  bottom     ]   corner: k x k, bottom: k x m,
///
/// together with the derived pieces of the inverse formula.
template <MatrixScalar Scalar>
struct HessenbergBlocks {
  DenseMatrix<Scalar> left;        // B
  DenseMatrix<Scalar> triangular;  // A, invertible by strictness
  DenseMatrix<Scalar> corner;      // D
  DenseMatrix<Scalar> bottom;      // C

  DenseMatrix<Scalar> triangular_inverse;  // A^-1
  DenseMatrix<Scalar> left_coupling;       // E = -A^-1 B      (m x k)
  DenseMatrix<Scalar> bottom_coupling;     // F = -C A^-1      (k x m)
  DenseMatrix<Scalar> witness;             // G = C A^-1 B - D (k x k)
};

template <MatrixScalar Scalar>
struct HessenbergInvertibility {
  bool invertible = false;
  DenseMatrix<Scalar> witness;  // H is invertible iff this k x k block is
};

/// Validates the band pattern (zero above the k-th superdiagonal) and
/// strictness (nonzero k-th superdiagonal) and tags the matrix with k.
template <MatrixScalar Scalar>
HessenbergView<Scalar> hessenberg_view(DenseMatrix<Scalar> h, Index bandwidth) {
  if (h.rows() != h.cols())
    throw DimensionError("hessenberg_view: matrix must be square");
  const Index n = h.rows();
  if (bandwidth < 1 || bandwidth >= n)
    throw ArgumentError("hessenberg_view: bandwidth must satisfy 1 <= k < n");
  for (Index i = 0; i < n; ++i)
    for (Index j = i + bandwidth + 1; j < n; ++j)
      if (h(i, j) != Scalar(0))
        throw StructureError("hessenberg_view: nonzero entry above band " +
                                 std::to_string(bandwidth) + " at (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ")",
                             i, j);
  for (Index i = 0; i + bandwidth < n; ++i)
    if (std::abs(h(i, i + bandwidth)) <= kSingularFloor)
      throw StructureError(
          "hessenberg_view: zero entry on the strict band in row " +
              std::to_string(i),
          i, i + bandwidth);
  return HessenbergView<Scalar>{std::move(h), bandwidth};
}

/// Splits H into its four blocks and computes the derived inverse pieces.
template <MatrixScalar Scalar>
HessenbergBlocks<Scalar> block_decompose(const HessenbergView<Scalar>& view) {
  const Index n = view.size();
  const Index k = view.bandwidth;
  const Index m = view.triangular_size();
  const DenseMatrix<Scalar>& h = view.matrix;

  HessenbergBlocks<Scalar> blocks;
  blocks.left = h.topLeftCorner(m, k);
  blocks.triangular = h.topRightCorner(m, m);
  blocks.corner = h.bottomLeftCorner(k, k);
  blocks.bottom = h.bottomRightCorner(k, m);

  blocks.triangular_inverse = invert_triangular(blocks.triangular);
  blocks.left_coupling = -mat_mul(blocks.triangular_inverse, blocks.left);
  const DenseMatrix<Scalar> bottom_solved =
      mat_mul(blocks.bottom, blocks.triangular_inverse);
  blocks.bottom_coupling = -bottom_solved;
  blocks.witness = mat_mul(bottom_solved, blocks.left) - blocks.corner;
  return blocks;
}

/// The (n+k) x (n+k) lower triangular embedding
/// T = [I 0 0; left triangular 0; corner bottom I].
template <MatrixScalar Scalar>
DenseMatrix<Scalar> embed_triangular(const HessenbergView<Scalar>& view) {
  const Index k = view.bandwidth;
  const Index m = view.triangular_size();
  const HessenbergBlocks<Scalar> blocks = block_decompose(view);
  const DenseMatrix<Scalar> eye = DenseMatrix<Scalar>::Identity(k, k);
  return block_compose<Scalar>(
      {{eye, DenseMatrix<Scalar>::Zero(k, m), DenseMatrix<Scalar>::Zero(k, k)},
       {blocks.left, blocks.triangular, DenseMatrix<Scalar>::Zero(m, k)},
       {blocks.corner, blocks.bottom, eye}});
}

/// Closed-form inverse of the triangular embedding:
/// T^-1 = [I 0 0; E A^-1 0; G F I].
template <MatrixScalar Scalar>
DenseMatrix<Scalar> embedded_inverse(const HessenbergView<Scalar>& view) {
  const Index k = view.bandwidth;
  const Index m = view.triangular_size();
  const HessenbergBlocks<Scalar> blocks = block_decompose(view);
  const DenseMatrix<Scalar> eye = DenseMatrix<Scalar>::Identity(k, k);
  return block_compose<Scalar>(
      {{eye, DenseMatrix<Scalar>::Zero(k, m), DenseMatrix<Scalar>::Zero(k, k)},
       {blocks.left_coupling, blocks.triangular_inverse,
        DenseMatrix<Scalar>::Zero(m, k)},
       {blocks.witness, blocks.bottom_coupling, eye}});
}

/// H is invertible iff its witness block G = C A^-1 B - D is; the witness is
/// returned alongside the verdict. Invertibility of G is decided by the
/// pivoted elimination oracle.
template <MatrixScalar Scalar>
HessenbergInvertibility<Scalar> is_invertible_hessenberg(
    const HessenbergView<Scalar>& view) {
  HessenbergBlocks<Scalar> blocks = block_decompose(view);
  HessenbergInvertibility<Scalar> result;
  result.witness = std::move(blocks.witness);
  try {
    oracle_inverse(result.witness);
    result.invertible = true;
  } catch (const SingularError&) {
    result.invertible = false;
  }
  return result;
}

/// Explicit inverse of a strict k-Hessenberg matrix:
/// H^-1 = [0 0; A^-1 0] - [I; E] G^-1 [F I]. The top-right k x k block of
/// the result equals -G^-1.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> invert_hessenberg(const HessenbergView<Scalar>& view) {
  const Index n = view.size();
  const Index k = view.bandwidth;
  const Index m = view.triangular_size();
  const HessenbergBlocks<Scalar> blocks = block_decompose(view);

  DenseMatrix<Scalar> witness_inverse;
  try {
    witness_inverse = oracle_inverse(blocks.witness);
  } catch (const SingularError& e) {
    throw SingularError(
        std::string("invert_hessenberg: matrix is singular (witness block "
                    "C A^-1 B - D is not invertible: ") +
            e.what() + ")",
        e.index());
  }

  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(n, n);
  out.block(k, 0, m, m) = blocks.triangular_inverse;

  DenseMatrix<Scalar> column_block(n, k);  // [I; E]
  column_block.topRows(k) = DenseMatrix<Scalar>::Identity(k, k);
  column_block.bottomRows(m) = blocks.left_coupling;
  DenseMatrix<Scalar> row_block(k, n);  // [F I]
  row_block.leftCols(m) = blocks.bottom_coupling;
  row_block.rightCols(k) = DenseMatrix<Scalar>::Identity(k, k);

  out -= mat_mul(mat_mul(column_block, witness_inverse), row_block);
  return out;
}

/// Returns a copy of the view with the corner block D replaced by
/// C A^-1 B - I, which makes the witness exactly the identity and hence the
/// matrix invertible.
template <MatrixScalar Scalar>
HessenbergView<Scalar> make_invertible(const HessenbergView<Scalar>& view) {
  const Index k = view.bandwidth;
  const Index m = view.triangular_size();
  const HessenbergBlocks<Scalar> blocks = block_decompose(view);
  const DenseMatrix<Scalar> product =
      mat_mul(mat_mul(blocks.bottom, blocks.triangular_inverse), blocks.left);
  DenseMatrix<Scalar> repaired = view.matrix;
  repaired.block(m, 0, k, k) =
      product - DenseMatrix<Scalar>::Identity(k, k);
  return hessenberg_view(std::move(repaired), view.bandwidth);
}

/// Assembles a banded matrix from its diagonals and returns it as a strict
/// k-Hessenberg view with k equal to the number of upper bands.
/// `lower_bands[d]` / `upper_bands[d]` hold the (d+1)-th sub/superdiagonal
/// and must have length n - d - 1. The outermost upper band must be nonzero
/// everywhere (strictness).
template <MatrixScalar Scalar>
HessenbergView<Scalar> banded(const std::vector<std::vector<Scalar>>& lower_bands,
                              const std::vector<Scalar>& diagonal,
                              const std::vector<std::vector<Scalar>>& upper_bands) {
  const Index n = static_cast<Index>(diagonal.size());
  if (upper_bands.empty())
    throw ArgumentError("banded: at least one upper band is required");
  const Index k = static_cast<Index>(upper_bands.size());
  if (n < 2 || k >= n)
    throw ArgumentError("banded: need 1 <= upper bands < n");
  if (static_cast<Index>(lower_bands.size()) >= n)
    throw ArgumentError("banded: too many lower bands");
  for (std::size_t d = 0; d < lower_bands.size(); ++d)
    if (static_cast<Index>(lower_bands[d].size()) != n - static_cast<Index>(d) - 1)
      throw DimensionError("banded: lower band " + std::to_string(d + 1) +
                           " has the wrong length");
  for (std::size_t d = 0; d < upper_bands.size(); ++d)
    if (static_cast<Index>(upper_bands[d].size()) != n - static_cast<Index>(d) - 1)
      throw DimensionError("banded: upper band " + std::to_string(d + 1) +
                           " has the wrong length");

  DenseMatrix<Scalar> h = DenseMatrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) h(i, i) = diagonal[static_cast<std::size_t>(i)];
  for (std::size_t d = 0; d < lower_bands.size(); ++d)
    for (std::size_t i = 0; i < lower_bands[d].size(); ++i)
      h(static_cast<Index>(i + d + 1), static_cast<Index>(i)) = lower_bands[d][i];
  for (std::size_t d = 0; d < upper_bands.size(); ++d)
    for (std::size_t i = 0; i < upper_bands[d].size(); ++i)
      h(static_cast<Index>(i), static_cast<Index>(i + d + 1)) = upper_bands[d][i];
  return hessenberg_view(std::move(h), k);
}

/// Tridiagonal constructor: sub/superdiagonal of length n-1, diagonal of
/// length n; the superdiagonal must be nonzero everywhere. k = 1.
template <MatrixScalar Scalar>
HessenbergView<Scalar> tridiagonal(const std::vector<Scalar>& sub,
                                   const std::vector<Scalar>& diagonal,
                                   const std::vector<Scalar>& sup) {
  return banded<Scalar>({sub}, diagonal, {sup});
}

}  // namespace eltri
