// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#include "eltri/generate.hpp"

#include <cmath>

namespace eltri {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

std::uint64_t SeededRng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double SeededRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::symmetric() { return 2.0 * uniform() - 1.0; }

double SeededRng::signed_magnitude(double lo, double hi) {
  const double magnitude = lo + (hi - lo) * uniform();
  return (next_u64() & 1U) ? -magnitude : magnitude;
}

SeededRng SeededRng::split(std::uint64_t index) const {
  return SeededRng(mix(seed_ ^ (kGolden * (index + 1))));
}

RealMatrix random_lower_triangular(Index n, std::uint64_t seed) {
  SeededRng rng(seed);
  RealMatrix out = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) out(i, j) = rng.symmetric();
    out(i, i) = rng.signed_magnitude(0.5, 2.0);
  }
  return out;
}

ComplexMatrix random_lower_triangular_complex(Index n, std::uint64_t seed) {
  SeededRng rng(seed);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      const double re = rng.symmetric();
      const double im = rng.symmetric();
      out(i, j) = {re, im};
    }
    const double modulus = 0.5 + 1.5 * rng.uniform();
    const double phase = 2.0 * M_PI * rng.uniform();
    out(i, i) = std::polar(modulus, phase);
  }
  return out;
}

RealMatrix random_strict_hessenberg(Index n, Index k, std::uint64_t seed) {
  SeededRng rng(seed);
  RealMatrix out = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < std::min(i + k, n - 1) + 1; ++j) {
      out(i, j) =
          j == i + k ? rng.signed_magnitude(0.5, 2.0) : rng.symmetric();
    }
  }
  return out;
}

RealMatrix random_banded(Index n, Index lower, Index upper,
                         std::uint64_t seed) {
  SeededRng rng(seed);
  RealMatrix out = RealMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index first = std::max<Index>(0, i - lower);
    const Index last = std::min<Index>(n - 1, i + upper);
    for (Index j = first; j <= last; ++j)
      out(i, j) =
          j == i + upper ? rng.signed_magnitude(0.5, 2.0) : rng.symmetric();
  }
  return out;
}

RealMatrix random_block_triangular(const BlockPartition& partition,
                                   std::uint64_t seed) {
  SeededRng rng(seed);
  const Index n = partition.total();
  RealMatrix out = RealMatrix::Zero(n, n);
  for (Index bj = 0; bj < partition.count(); ++bj) {
    const Index row_begin = partition.offset(bj);
    const Index row_end = row_begin + partition.size(bj);
    for (Index i = row_begin; i < row_end; ++i)
      for (Index j = 0; j < row_end; ++j)
        out(i, j) = i == j ? rng.signed_magnitude(0.5, 2.0) : rng.symmetric();
  }
  return out;
}

RealMatrix random_dense(Index rows, Index cols, std::uint64_t seed) {
  SeededRng rng(seed);
  RealMatrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.symmetric();
  return out;
}

}  // namespace eltri
