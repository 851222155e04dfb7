// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "eltri/matrix.hpp"

// Elementary factors of lower triangular matrices. A column factor with
// index k equals the identity except in column k, which carries entries of
// the factored matrix; a row factor carries one row instead. Products,
// inverses and powers of such factors have closed forms that this module
// implements, together with the triangular inversion paths built on them.

namespace eltri {

enum class Orientation { column, row };

/// One elementary factor, stored compactly as its single interesting column
/// (entries a(k..n-1, k)) or row (entries a(k, 0..k)).
template <MatrixScalar Scalar>
struct ElementaryFactor {
  Index n = 0;
  Index index = 0;
  Orientation orientation = Orientation::column;
  DenseVector<Scalar> entries;

  Scalar diagonal_entry() const {
    return orientation == Orientation::column ? entries(0)
                                              : entries(entries.size() - 1);
  }

  bool is_invertible() const {
    return std::abs(diagonal_entry()) > kSingularFloor;
  }

  DenseMatrix<Scalar> dense() const {
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
    if (orientation == Orientation::column) {
      for (Index i = index; i < n; ++i) out(i, index) = entries(i - index);
    } else {
      for (Index j = 0; j <= index; ++j) out(index, j) = entries(j);
    }
    return out;
  }
};

template <MatrixScalar Scalar>
ElementaryFactor<Scalar> column_factor(Index n, Index k,
                                       DenseVector<Scalar> entries) {
  if (n < 1 || k < 0 || k >= n)
    throw ArgumentError("column_factor: index out of range");
  if (entries.size() != n - k)
    throw DimensionError("column_factor: expected " + std::to_string(n - k) +
                         " entries");
  return ElementaryFactor<Scalar>{n, k, Orientation::column,
                                  std::move(entries)};
}

template <MatrixScalar Scalar>
ElementaryFactor<Scalar> row_factor(Index n, Index k,
                                    DenseVector<Scalar> entries) {
  if (n < 1 || k < 0 || k >= n)
    throw ArgumentError("row_factor: index out of range");
  if (entries.size() != k + 1)
    throw DimensionError("row_factor: expected " + std::to_string(k + 1) +
                         " entries");
  return ElementaryFactor<Scalar>{n, k, Orientation::row, std::move(entries)};
}

/// The chain product G(K) = a(k1,k2) a(k2,k3) ... a(k_{r-1},kr) C_{k1} L^{k1-kr}
/// for a descending index set K = {k1 > k2 > ... > kr}; for a singleton it is
/// C_{k1} itself. All nonzero entries of the dense form live in column
/// `target` at rows `source` and below.
template <MatrixScalar Scalar>
struct ChainTerm {
  Index n = 0;
  Scalar coefficient{1};
  Index source = 0;  // k1, the largest index: the carried column of C_{k1}
  Index target = 0;  // kr, the smallest index: the only nonzero column
  DenseVector<Scalar> column;  // length n, zero above `source`

  DenseMatrix<Scalar> dense() const {
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(n, n);
    out.col(target).tail(n - source) = coefficient * column.tail(n - source);
    return out;
  }
};

namespace detail {

template <MatrixScalar Scalar>
void require_lower_triangular(const DenseMatrix<Scalar>& a, const char* who) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(who) + ": matrix must be square");
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != Scalar(0))
        throw StructureError(std::string(who) + ": nonzero entry above the " +
                                 "diagonal at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")",
                             i, j);
}

template <MatrixScalar Scalar>
void require_nonzero_diagonal(const DenseMatrix<Scalar>& a, const char* who) {
  for (Index k = 0; k < a.rows(); ++k)
    if (std::abs(a(k, k)) <= kSingularFloor)
      throw SingularError(std::string(who) + ": zero diagonal entry at index " +
                              std::to_string(k),
                          k);
}

// Applies (E_j)^-1, (E_{j+1})^-1, ..., (E_{n-1})^-1 to the unit vector e_j,
// writing the result into `col` (a column view of the output matrix). Every
// inverse factor with a smaller index fixes e_j, so this is exactly column j
// of A^-1; the scalar operation sequence is column-oriented forward
// substitution. Both inversion paths funnel through this kernel so that
// their outputs are bit-identical.
template <MatrixScalar Scalar, typename Column>
void solve_unit_column(const DenseMatrix<Scalar>& a, Index j, Column&& col) {
  const Index n = a.rows();
  col.setZero();
  col(j) = Scalar(1);
  for (Index k = j; k < n; ++k) {
    const Scalar t = col(k) / a(k, k);
    col(k) = t;
    for (Index i = k + 1; i < n; ++i) col(i) -= t * a(i, k);
  }
}

// Depth-first enumeration of the nonempty subsets J of `candidates` (given
// ascending) with at most `max_size` elements and nonzero chain coefficient.
// Subsets are visited in lexicographic order of their ascending element
// lists. The visitor receives the elements (ascending) and the coefficient
// a(k1,k2)...a(k_{r-1},kr) of the descending chain. Extending a subset only
// prepends links to its chain, so a zero running coefficient prunes the
// whole subtree.
template <MatrixScalar Scalar, typename Visitor>
void for_each_chain_subset(const DenseMatrix<Scalar>& a,
                           const std::vector<Index>& candidates,
                           Index max_size, Visitor&& visit) {
  if (max_size <= 0) return;
  std::vector<Index> chosen;
  std::vector<Scalar> coefficients;
  chosen.reserve(candidates.size());
  coefficients.reserve(candidates.size());

  const std::function<void(std::size_t)> descend = [&](std::size_t from) {
    for (std::size_t p = from; p < candidates.size(); ++p) {
      const Index element = candidates[p];
      const Scalar coefficient =
          chosen.empty() ? Scalar(1)
                         : a(element, chosen.back()) * coefficients.back();
      if (coefficient == Scalar(0)) continue;
      chosen.push_back(element);
      coefficients.push_back(coefficient);
      visit(chosen, coefficient);
      if (static_cast<Index>(chosen.size()) < max_size) descend(p + 1);
      chosen.pop_back();
      coefficients.pop_back();
    }
  };
  descend(0);
}

}  // namespace detail

/// The singleton chain term G({k}) = C_k = E_k - I: column k of A with the
/// diagonal entry reduced by one, zeros elsewhere. Summing C_k over all k
/// recovers A - I.
template <MatrixScalar Scalar>
ChainTerm<Scalar> column_part(const DenseMatrix<Scalar>& a, Index k) {
  detail::require_lower_triangular(a, "column_part");
  const Index n = a.rows();
  if (k < 0 || k >= n) throw ArgumentError("column_part: index out of range");
  ChainTerm<Scalar> term;
  term.n = n;
  term.coefficient = Scalar(1);
  term.source = k;
  term.target = k;
  term.column = DenseVector<Scalar>::Zero(n);
  term.column(k) = a(k, k) - Scalar(1);
  for (Index i = k + 1; i < n; ++i) term.column(i) = a(i, k);
  return term;
}

/// Column elementary factors E_1..E_n of a lower triangular matrix; their
/// ordered product reproduces A without any arithmetic.
template <MatrixScalar Scalar>
std::vector<ElementaryFactor<Scalar>> factorize_columns(
    const DenseMatrix<Scalar>& a) {
  detail::require_lower_triangular(a, "factorize_columns");
  const Index n = a.rows();
  std::vector<ElementaryFactor<Scalar>> factors;
  factors.reserve(n);
  for (Index k = 0; k < n; ++k)
    factors.push_back(
        column_factor<Scalar>(n, k, a.col(k).tail(n - k)));
  return factors;
}

/// Row elementary factors F_1..F_n; their ordered product reproduces A.
template <MatrixScalar Scalar>
std::vector<ElementaryFactor<Scalar>> factorize_rows(
    const DenseMatrix<Scalar>& a) {
  detail::require_lower_triangular(a, "factorize_rows");
  const Index n = a.rows();
  std::vector<ElementaryFactor<Scalar>> factors;
  factors.reserve(n);
  for (Index k = 0; k < n; ++k)
    factors.push_back(
        row_factor<Scalar>(n, k, a.row(k).head(k + 1).transpose()));
  return factors;
}

/// Inverse of an elementary factor: again elementary with the same index and
/// orientation, with diagonal 1/a(k,k) and the other entries divided by
/// -a(k,k).
template <MatrixScalar Scalar>
ElementaryFactor<Scalar> elementary_inverse(const ElementaryFactor<Scalar>& e) {
  if (!e.is_invertible())
    throw SingularError("elementary_inverse: factor " + std::to_string(e.index) +
                            " has a zero diagonal entry",
                        e.index);
  const Scalar diagonal = e.diagonal_entry();
  DenseVector<Scalar> entries(e.entries.size());
  for (Index i = 0; i < e.entries.size(); ++i) entries(i) = -(e.entries(i) / diagonal);
  const Index diagonal_pos =
      e.orientation == Orientation::column ? 0 : e.entries.size() - 1;
  entries(diagonal_pos) = Scalar(1) / diagonal;
  return ElementaryFactor<Scalar>{e.n, e.index, e.orientation,
                                  std::move(entries)};
}

/// Inverse of a lower triangular matrix as the product of its inverse
/// elementary factors, accumulated right to left: after (E_k)^-1 is
/// incorporated, columns k..n-1 of the accumulator are final.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> invert_triangular(const DenseMatrix<Scalar>& a) {
  detail::require_lower_triangular(a, "invert_triangular");
  detail::require_nonzero_diagonal(a, "invert_triangular");
  const Index n = a.rows();
  DenseMatrix<Scalar> out(n, n);
  for (Index k = n - 1; k >= 0; --k) detail::solve_unit_column(a, k, out.col(k));
  return out;
}

/// Per-column parallel triangular inversion. Column j of A^-1 equals
/// (E_{n-1})^-1 ... (E_j)^-1 e_j, so every output column is an independent
/// task over read-only input; the result is bit-identical to
/// invert_triangular for every worker count and schedule. `workers` <= 0
/// selects the hardware concurrency.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> invert_columns_parallel(const DenseMatrix<Scalar>& a,
                                            int workers = 0) {
  detail::require_lower_triangular(a, "invert_columns_parallel");
  detail::require_nonzero_diagonal(a, "invert_columns_parallel");
  const Index n = a.rows();
  DenseMatrix<Scalar> out(n, n);
  if (workers <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : static_cast<int>(hw);
  }
  const Index count = std::min<Index>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (Index w = 0; w < count; ++w) {
    pool.emplace_back([&a, &out, w, count, n] {
      for (Index j = w; j < n; j += count)
        detail::solve_unit_column(a, j, out.col(j));
    });
  }
  for (auto& worker : pool) worker.join();
  return out;
}

/// Companion of A whose elementary factors are the inverses of A's factors:
/// B = I + (I - A) D^-1 for the column orientation, B = I + D^-1 (I - A) for
/// the row orientation, with D the diagonal of A. Multiplying A's factors in
/// reverse order yields B^-1.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> companion_matrix(const DenseMatrix<Scalar>& a,
                                     Orientation orientation) {
  detail::require_lower_triangular(a, "companion_matrix");
  detail::require_nonzero_diagonal(a, "companion_matrix");
  const Index n = a.rows();
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
  if (orientation == Orientation::column) {
    for (Index k = 0; k < n; ++k) {
      const Scalar diagonal = a(k, k);
      out(k, k) += (Scalar(1) - diagonal) / diagonal;
      for (Index i = k + 1; i < n; ++i) out(i, k) = -(a(i, k) / diagonal);
    }
  } else {
    for (Index k = 0; k < n; ++k) {
      const Scalar diagonal = a(k, k);
      out(k, k) += (Scalar(1) - diagonal) / diagonal;
      for (Index j = 0; j < k; ++j) out(k, j) = -(a(k, j) / diagonal);
    }
  }
  return out;
}

/// Chain product over an index set K (any order, duplicates rejected).
/// The dense form equals the explicit product C_{k1} C_{k2} ... C_{kr} of the
/// descending chain.
template <MatrixScalar Scalar>
ChainTerm<Scalar> chain_product(const DenseMatrix<Scalar>& a,
                                std::vector<Index> indices) {
  detail::require_lower_triangular(a, "chain_product");
  if (indices.empty()) throw ArgumentError("chain_product: empty index set");
  const Index n = a.rows();
  for (Index k : indices)
    if (k < 0 || k >= n)
      throw ArgumentError("chain_product: index out of range");
  std::sort(indices.begin(), indices.end(), std::greater<>());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw ArgumentError("chain_product: indices must be distinct");

  ChainTerm<Scalar> term = column_part(a, indices.front());
  term.target = indices.back();
  Scalar coefficient = Scalar(1);
  for (std::size_t i = 0; i + 1 < indices.size(); ++i)
    coefficient *= a(indices[i], indices[i + 1]);
  term.coefficient = coefficient;
  return term;
}

/// E_k^m = I + (1 + x_k + ... + x_k^{m-1}) C_k, with the coefficient
/// evaluated as the geometric sum; at x_k = 1 it is exactly m. Works for
/// both orientations.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> elementary_power(const ElementaryFactor<Scalar>& e,
                                     long m) {
  if (m < 0) throw ArgumentError("elementary_power: exponent must be nonnegative");
  const Scalar diagonal = e.diagonal_entry();
  Scalar coefficient = Scalar(0);
  Scalar term = Scalar(1);
  for (long i = 0; i < m; ++i) {
    coefficient += term;
    term *= diagonal;
  }
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(e.n, e.n);
  const Index k = e.index;
  if (e.orientation == Orientation::column) {
    out(k, k) += coefficient * (diagonal - Scalar(1));
    for (Index i = k + 1; i < e.n; ++i)
      out(i, k) = coefficient * e.entries(i - k);
  } else {
    out(k, k) += coefficient * (diagonal - Scalar(1));
    for (Index j = 0; j < k; ++j) out(k, j) = coefficient * e.entries(j);
  }
  return out;
}

/// Size guard for the subset enumeration in product_of_factors_descending.
inline constexpr Index kFactorProductGuard = 20;

/// Product E_{k1} E_{k2} ... E_{kr} for a strictly descending index list,
/// evaluated as I plus the sum of G(J) over all nonempty subsets J of the
/// list. Subsets whose chain hits a zero entry contribute nothing and are
/// pruned.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> product_of_factors_descending(
    const DenseMatrix<Scalar>& a, const std::vector<Index>& descending) {
  detail::require_lower_triangular(a, "product_of_factors_descending");
  if (descending.empty())
    throw ArgumentError("product_of_factors_descending: empty index list");
  const Index n = a.rows();
  for (std::size_t i = 0; i < descending.size(); ++i) {
    if (descending[i] < 0 || descending[i] >= n)
      throw ArgumentError("product_of_factors_descending: index out of range");
    if (i > 0 && descending[i] >= descending[i - 1])
      throw ArgumentError(
          "product_of_factors_descending: indices must be strictly descending");
  }
  if (static_cast<Index>(descending.size()) > kFactorProductGuard)
    throw SizeGuardError(
        "product_of_factors_descending: index list longer than the subset "
        "enumeration guard (" +
        std::to_string(kFactorProductGuard) + ")");

  // Columns of C_k stacked: A - I on the lower triangle.
  DenseMatrix<Scalar> parts = a;
  parts.diagonal().array() -= Scalar(1);

  std::vector<Index> ascending(descending.rbegin(), descending.rend());
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
  detail::for_each_chain_subset(
      a, ascending, static_cast<Index>(ascending.size()),
      [&](const std::vector<Index>& subset, const Scalar& coefficient) {
        const Index target = subset.front();
        const Index source = subset.back();
        out.col(target).tail(n - source) +=
            coefficient * parts.col(source).tail(n - source);
      });
  return out;
}

/// Leading section inverses by the row recursion: emits, for k = 1..n, the
/// k x k matrix P_k = F_k F_{k-1} ... F_1 built from A's row factors. P_k is
/// the inverse of the leading k x k section of companion_matrix(A, row), and
/// consecutive P's differ only in their last row.
template <MatrixScalar Scalar>
std::vector<DenseMatrix<Scalar>> section_inverses(const DenseMatrix<Scalar>& a) {
  detail::require_lower_triangular(a, "section_inverses");
  detail::require_nonzero_diagonal(a, "section_inverses");
  const Index n = a.rows();
  std::vector<DenseMatrix<Scalar>> sections;
  sections.reserve(n);
  DenseMatrix<Scalar> accumulator = DenseMatrix<Scalar>::Identity(n, n);
  DenseVector<Scalar> row(n);
  for (Index k = 0; k < n; ++k) {
    // Row k of F_k * accumulator; rows above k are already final and rows
    // below are still identity rows. Row j of the accumulator has support in
    // columns 0..j.
    row.setZero();
    for (Index j = 0; j < k; ++j) {
      const Scalar weight = a(k, j);
      for (Index c = 0; c <= j; ++c) row(c) += weight * accumulator(j, c);
    }
    row(k) = a(k, k);
    accumulator.row(k) = row.transpose();
    sections.emplace_back(accumulator.topLeftCorner(k + 1, k + 1));
  }
  return sections;
}

}  // namespace eltri
