// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eltri/elementary.hpp"
#include "eltri/matrix.hpp"

// Closed-form powers of lower triangular matrices. The coefficient of each
// chain term G(J) in A^m is a divided difference of a monomial at the nodes
// (1, x_{k1}, ..., x_{kr}), which equals the complete homogeneous symmetric
// polynomial of degree m - |J| in those nodes. Evaluating it that way is
// well defined even when nodes coincide, which happens whenever diagonal
// entries repeat or equal one.

namespace eltri {

/// Default size guard for the subset enumeration in matrix_power.
inline constexpr Index kPowerSizeGuard = 14;

/// Complete homogeneous symmetric polynomial h_d: the sum of all monomials
/// of total degree d in the node values. h_0 = 1. Computed by the recurrence
/// h_d(x_1..x_p) = h_d(x_1..x_{p-1}) + x_p h_{d-1}(x_1..x_p).
template <MatrixScalar Scalar>
Scalar complete_homogeneous(long degree, std::span<const Scalar> nodes) {
  if (degree < 0)
    throw ArgumentError("complete_homogeneous: degree must be nonnegative");
  if (nodes.empty())
    throw ArgumentError("complete_homogeneous: no nodes given");
  std::vector<Scalar> table(static_cast<std::size_t>(degree) + 1, Scalar(0));
  table[0] = Scalar(1);
  for (const Scalar& node : nodes)
    for (long e = 1; e <= degree; ++e)
      table[e] += node * table[e - 1];
  return table[degree];
}

template <MatrixScalar Scalar>
Scalar complete_homogeneous(long degree, const std::vector<Scalar>& nodes) {
  return complete_homogeneous<Scalar>(degree,
                                      std::span<const Scalar>(nodes));
}

/// g(K, m): the divided difference of t^{m+r} at the nodes
/// (1, x_{k1}, ..., x_{kr}) selected by K, evaluated as h_m of those nodes.
/// Symmetric in K (the indices are canonicalized), and g(K, 0) = 1 for every
/// K. Repeated diagonal values are fine.
template <MatrixScalar Scalar>
Scalar g_coefficient(const DenseMatrix<Scalar>& a, std::vector<Index> indices,
                     long m) {
  if (a.rows() != a.cols())
    throw DimensionError("g_coefficient: matrix must be square");
  if (indices.empty()) throw ArgumentError("g_coefficient: empty index set");
  if (m < 0) throw ArgumentError("g_coefficient: m must be nonnegative");
  for (Index k : indices)
    if (k < 0 || k >= a.rows())
      throw ArgumentError("g_coefficient: index out of range");
  std::sort(indices.begin(), indices.end(), std::greater<>());
  std::vector<Scalar> nodes;
  nodes.reserve(indices.size() + 1);
  nodes.push_back(Scalar(1));
  for (Index k : indices) nodes.push_back(a(k, k));
  return complete_homogeneous<Scalar>(m, nodes);
}

/// A^m = I + sum over nonempty J (|J| <= min(m, n)) of g(J, m - |J|) G(J).
/// Subset terms are accumulated in a fixed lexicographic order; chains
/// through zero entries are pruned. Refuses matrices larger than
/// `size_guard` because the enumeration is exponential.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> matrix_power(const DenseMatrix<Scalar>& a, long m,
                                 Index size_guard = kPowerSizeGuard) {
  detail::require_lower_triangular(a, "matrix_power");
  if (m < 0) throw ArgumentError("matrix_power: exponent must be nonnegative");
  const Index n = a.rows();
  if (n > size_guard)
    throw SizeGuardError("matrix_power: size " + std::to_string(n) +
                         " exceeds the subset enumeration guard (" +
                         std::to_string(size_guard) + ")");

  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
  if (m == 0) return out;

  DenseMatrix<Scalar> parts = a;  // columns of C_k: A - I on the lower triangle
  parts.diagonal().array() -= Scalar(1);

  std::vector<Index> all(n);
  for (Index k = 0; k < n; ++k) all[static_cast<std::size_t>(k)] = k;
  const Index max_size = std::min<Index>(m, n);

  detail::for_each_chain_subset(
      a, all, max_size,
      [&](const std::vector<Index>& subset, const Scalar& coefficient) {
        const long r = static_cast<long>(subset.size());
        const Scalar weight = g_coefficient(a, subset, m - r);
        const Index target = subset.front();
        const Index source = subset.back();
        out.col(target).tail(n - source) +=
            (weight * coefficient) * parts.col(source).tail(n - source);
      });
  return out;
}

/// A^2 = I + sum_k (1 + x_k) C_k + sum_{j<k} a(k,j) C_k L^{k-j}, assembled
/// with O(n^2) terms and no subset enumeration.
template <MatrixScalar Scalar>
DenseMatrix<Scalar> square_closed_form(const DenseMatrix<Scalar>& a) {
  detail::require_lower_triangular(a, "square_closed_form");
  const Index n = a.rows();
  DenseMatrix<Scalar> parts = a;
  parts.diagonal().array() -= Scalar(1);

  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(n, n);
  for (Index k = 0; k < n; ++k) {
    out.col(k).tail(n - k) += (Scalar(1) + a(k, k)) * parts.col(k).tail(n - k);
    // C_k L^{k-j} carries column k of C_k into column j, same rows.
    for (Index j = 0; j < k; ++j)
      out.col(j).segment(k, n - k) += a(k, j) * parts.col(k).tail(n - k);
  }
  return out;
}

}  // namespace eltri
