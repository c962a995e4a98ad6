#pragma once

// Exact 64-bit integer arithmetic: primality, factorization, perfect-power
// radicals and unitary divisors.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mdep {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// value = prod(prime^exponent), primes strictly increasing. value == 1 has no
// factors.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;

  std::size_t distinct_primes() const { return factors.size(); }
  bool squarefree() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// n = base^exponent with base not a perfect power.
struct RadicalPower {
  u64 base = 0;
  unsigned exponent = 0;

  friend bool operator==(const RadicalPower&, const RadicalPower&) = default;
};

/// Deterministic Miller-Rabin over the whole 64-bit range.
bool is_prime(u64 n);

/// Trial division by small primes, then Brent's rho on the cofactor.
/// Throws DomainError for n == 0.
Factorization factorize(u64 n);

/// Throws DomainError for n < 2.
RadicalPower radical_power(u64 n);
/// Same, reusing an existing factorization of n.
RadicalPower radical_power(const Factorization& f);

/// Products of full prime-power blocks over all subsets of the support,
/// ascending; includes 1 and f.value. Length is 2^m.
std::vector<u64> unitary_divisors(const Factorization& f);

/// k with g^k == n, found by exact repeated division; nullopt otherwise.
/// Requires n >= 1, g >= 2.
std::optional<unsigned> exact_power_exponent(u64 n, u64 g);
std::optional<unsigned> exact_power_exponent(u128 n, u64 g);

/// g^k, or nullopt when the result does not fit in 64 bits.
std::optional<u64> checked_pow(u64 g, unsigned k);

u64 gcd(u64 a, u64 b);

/// Primes p <= limit by a simple sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

}  // namespace mdep
