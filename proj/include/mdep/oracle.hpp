#pragma once

// Slow brute-force references. Nothing here calls into arith, pillai, mset
// or multdep; tests compare those modules against these loops.

#include <vector>

#include "mdep/mset.hpp"
#include "mdep/pillai.hpp"

namespace mdep::oracle {

inline constexpr u64 kMaxPillaiD = 1'000'000;
inline constexpr u64 kMaxMsetD = 10'000;

/// Loops g = 2..d (skipping perfect powers) and 1 <= x < y with g^y <= 2d.
/// Throws DomainError outside [1, kMaxPillaiD].
std::vector<PrimitiveSolution> brute_pillai(u64 d, Sign sign);

/// Scans a in [-2d-2, 2d+2] minus {0, -d} with b = a + d and keeps the pairs
/// with |a| = 1, |b| = 1, or |a|, |b| powers of a common base. Complete
/// because every pair of the set has coordinates bounded by 2d + 2.
/// Throws DomainError outside [1, kMaxMsetD].
std::vector<DepPair> brute_mset(u64 d);

/// Smallest h >= 2 with n a power of h, found by trial (n >= 2).
u64 brute_radical(u64 n);

/// Pair dependence by the radical characterization.
bool brute_pair_dependent(i64 a, i64 b);

}  // namespace mdep::oracle
