#pragma once

// The set of multiplicatively dependent integer pairs (a, b), ab != 0, with
// b - a = d, its size M(d), and closed forms for special shapes of d.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mdep/arith.hpp"
#include "mdep/pillai.hpp"

namespace mdep {

using i64 = std::int64_t;

struct DepPair {
  i64 a = 0;
  i64 b = 0;

  friend auto operator<=>(const DepPair&, const DepPair&) = default;
};

struct MSetResult {
  u64 d = 0;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t m_value = 0;
  unsigned delta = 0;  // 1 iff d is even
  std::vector<PrimitiveSolution> plus_solutions;
  std::vector<PrimitiveSolution> minus_solutions;
  std::vector<DepPair> pairs;  // sorted by a, then b
};

// Largest d for which every pair coordinate (|a|, |b| <= 2d + 2) fits in i64.
inline constexpr u64 kMaxSetDifference = (u64{1} << 61) - 2;

/// The explicit set for d >= 1. d = 1 and d = 2 use their exceptional sets;
/// d >= 3 is assembled from the +/-1 pairs, (-d/2, d/2) for even d, and the
/// pairs generated by the Pillai solutions. Throws DomainError for d == 0 and
/// RangeError above kMaxSetDifference.
MSetResult build_set(u64 d);

/// M(d) = 2 N+(d) + 2 N-(d) + 4 + delta(d) for d >= 3; 2 and 5 for d = 1, 2.
std::size_t m_value(u64 d);
std::size_t m_value(const Factorization& d);

/// The counting formula itself (valid for d >= 3).
inline std::size_t m_from_counts(u64 d, std::size_t n_plus,
                                 std::size_t n_minus) {
  if (d == 1) return 2;
  if (d == 2) return 5;
  return 2 * n_plus + 2 * n_minus + 4 + (d % 2 == 0 ? 1 : 0);
}

enum class ClosedShape {
  One,           // d = 1
  Two,           // d = 2
  Odd,           // odd d >= 3
  PowerOfTwo,    // 2^r, r >= 2
  TwoThree,      // 2^r 3^s, r, s >= 1
  TwoOddPrime,   // 2^r p^s, p >= 5 prime, r, s >= 1
};

std::string_view describe(ClosedShape shape);

struct ClosedForm {
  std::size_t value = 0;
  ClosedShape shape = ClosedShape::One;
};

/// M(d) without solving any equation, when d has one of the shapes above.
std::optional<ClosedForm> closed_form(u64 d);
std::optional<ClosedForm> closed_form(const Factorization& d);

}  // namespace mdep
