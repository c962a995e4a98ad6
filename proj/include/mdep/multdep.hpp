#pragma once

// Multiplicative dependence of integer tuples.
//
// Nonzero integers z_1..z_n are dependent iff the rows of their prime
// exponent matrix (exponents of |z_i|) are linearly dependent over Q. A
// relation on absolute values whose sign product is -1 becomes a genuine
// relation after doubling every exponent, so signs never decide dependence.
// See docs/dependence.md.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdep/arith.hpp"

namespace mdep {

using i64 = std::int64_t;

struct ExponentMatrix {
  std::vector<u64> primes;                 // union of supports, ascending
  std::vector<std::vector<unsigned>> rows;  // rows[i][j]: exponent of primes[j]
};

struct DependenceWitness {
  std::vector<i64> exponents;  // prod z_i^exponents[i] == 1, not all zero

  friend bool operator==(const DependenceWitness&,
                         const DependenceWitness&) = default;
};

/// Throws DomainError on a zero entry or fewer than two entries.
ExponentMatrix exponent_matrix(std::span<const i64> tuple);

/// Rank over Q, by fraction-free elimination.
std::size_t exponent_rank(const ExponentMatrix& m);

bool is_dependent(std::span<const i64> tuple);

/// A verified relation, or nullopt iff the tuple is independent. The kernel
/// vector is divided by its content and its first nonzero entry made
/// positive; exponents are doubled when the signed product would be -1.
/// Throws RangeError if an exponent does not fit in 64 bits.
std::optional<DependenceWitness> witness(std::span<const i64> tuple);

/// Exact check that prod tuple[i]^exponents[i] == 1.
bool verify_witness(std::span<const i64> tuple, const DependenceWitness& w);

/// Every t with (a + t, b + t) dependent, ascending. Exact and complete.
/// Throws DomainError for a == b.
std::vector<i64> translations_pair(i64 a, i64 b);

/// Every t in [t_lo, t_hi] for which all a_i + t are nonzero and the
/// translated tuple is dependent, ascending. Only the window is searched.
/// Throws DomainError for repeated entries, fewer than two entries, or an
/// empty window.
std::vector<i64> translations_search(std::span<const i64> tuple, i64 t_lo,
                                     i64 t_hi, unsigned workers = 1);

}  // namespace mdep
