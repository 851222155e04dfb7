// Copyright (c) 2026 the eltri authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "eltri/block_triangular.hpp"
#include "eltri/matrix.hpp"

// Seeded random instances. All randomness flows through one explicit 64-bit
// generator whose stream depends only on the seed, so generated instances
// are identical across platforms and runs. Entries are uniform in [-1, 1);
// diagonals and strict bands are kept away from zero with magnitudes in
// [0.5, 2].

namespace eltri {

/// Deterministic splitmix64 stream, splittable into independent substreams
/// indexed by an instance number.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1), from the top 53 bits of the stream.
  double uniform();
  /// Uniform in [-1, 1).
  double symmetric();
  /// Random sign times a uniform magnitude in [lo, hi).
  double signed_magnitude(double lo, double hi);
  /// Independent substream for instance `index` of the same base seed.
  SeededRng split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// Lower triangular with subdiagonal entries in [-1, 1) and diagonal
/// magnitudes in [0.5, 2).
RealMatrix random_lower_triangular(Index n, std::uint64_t seed);

/// Complex variant: entries with real/imaginary parts in [-1, 1), diagonal
/// moduli in [0.5, 2) at a random phase.
ComplexMatrix random_lower_triangular_complex(Index n, std::uint64_t seed);

/// Strict k-Hessenberg: zero above band k, band magnitudes in [0.5, 2),
/// everything else in [-1, 1). Not repaired for invertibility.
RealMatrix random_strict_hessenberg(Index n, Index k, std::uint64_t seed);

/// Banded with `lower` sub- and `upper` superdiagonals; the outermost upper
/// band has magnitudes in [0.5, 2) (strictness), other bands are in [-1, 1).
RealMatrix random_banded(Index n, Index lower, Index upper, std::uint64_t seed);

inline RealMatrix random_tridiagonal(Index n, std::uint64_t seed) {
  return random_banded(n, 1, 1, seed);
}

/// Block lower triangular for the given partition: diagonal entries with
/// magnitudes in [0.5, 2), all other stored entries in [-1, 1).
RealMatrix random_block_triangular(const BlockPartition& partition,
                                   std::uint64_t seed);

/// Fully dense matrix with entries in [-1, 1).
RealMatrix random_dense(Index rows, Index cols, std::uint64_t seed);

}  // namespace eltri
