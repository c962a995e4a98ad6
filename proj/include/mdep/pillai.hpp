#pragma once

// Primitive solutions of g^y + g^x = d and g^y - g^x = d
// (g >= 2 not a perfect power, y > x >= 1).

#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "mdep/arith.hpp"

namespace mdep {

enum class Sign { Plus, Minus };

std::string_view to_string(Sign s);

struct PrimitiveSolution {
  u64 g = 0;
  unsigned x = 0;
  unsigned y = 0;
  Sign sign = Sign::Plus;

  friend bool operator==(const PrimitiveSolution&,
                         const PrimitiveSolution&) = default;
};

/// Canonical order: by g, then x.
bool canonical_less(const PrimitiveSolution& a, const PrimitiveSolution& b);

/// True iff g^y +/- g^x == d, evaluated without overflow.
bool satisfies(const PrimitiveSolution& s, u64 d);

// Each unitary divisor a = g^x of d (a >= 2) is tested: PLUS accepts when
// d - a > a and d - a is a power of g, MINUS when d + a is a power of g.
// Throw DomainError for d == 0.
std::vector<PrimitiveSolution> solve_plus(u64 d);
std::vector<PrimitiveSolution> solve_minus(u64 d);
std::vector<PrimitiveSolution> solve_plus(const Factorization& d);
std::vector<PrimitiveSolution> solve_minus(const Factorization& d);

std::size_t n_plus(u64 d);
std::size_t n_minus(u64 d);

/// Calls visit(a, g, x) for every unitary divisor a = g^x >= 2 of
/// d = prod(factors), with g the radical of a. Walks subsets of the prime
/// support by bitmask; nothing is allocated.
template <class Visit>
void for_each_unitary_radical(std::span<const PrimePower> factors,
                              Visit&& visit) {
  const std::size_t m = factors.size();
  u64 blocks[64];
  for (std::size_t i = 0; i < m; ++i) {
    u64 b = 1;
    for (unsigned e = 0; e < factors[i].exponent; ++e) b *= factors[i].prime;
    blocks[i] = b;
  }
  const u64 subsets = u64{1} << m;
  for (u64 mask = 1; mask < subsets; ++mask) {
    u64 a = 1;
    unsigned r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        a *= blocks[i];
        r = std::gcd(r, factors[i].exponent);
      }
    }
    u64 g = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        for (unsigned e = 0; e < factors[i].exponent / r; ++e) {
          g *= factors[i].prime;
        }
      }
    }
    visit(a, g, r);
  }
}

// Single-candidate acceptance tests used by the solvers and the scanner.
// Return y when a = g^x yields a solution.
std::optional<unsigned> plus_exponent(u64 d, u64 a, u64 g);
std::optional<unsigned> minus_exponent(u64 d, u64 a, u64 g);

}  // namespace mdep
