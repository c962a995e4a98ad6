#include "mdep/arith.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "mdep/errors.hpp"

namespace mdep {
namespace {

constexpr std::uint32_t kTrialBound = 1024;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialBound);
  return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// n odd, n > 2, n - 1 = d * 2^s with d odd.
bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's variant of Pollard rho. n must be odd and composite.
u64 brent_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 f = brent_rho(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  if (n < 37ull * 37ull) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set proven sufficient for all n < 2^64 (Jim Sinclair).
  static constexpr std::array<u64, 7> kWitnesses = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](u64 a) { return strong_probable_prime(n, a, d, s); });
}

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: zero has no factorization");
  Factorization f;
  f.value = n;
  u64 rest = n;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<u64>(p) * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    f.factors.push_back({p, e});
  }
  if (rest == 1) return f;

  std::vector<u64> big;
  if (rest < static_cast<u64>(kTrialBound) * kTrialBound) {
    big.push_back(rest);
  } else {
    split(rest, big);
  }
  std::sort(big.begin(), big.end());
  for (u64 p : big) {
    if (!f.factors.empty() && f.factors.back().prime == p) {
      ++f.factors.back().exponent;
    } else {
      f.factors.push_back({p, 1});
    }
  }
  return f;
}

RadicalPower radical_power(const Factorization& f) {
  if (f.value < 2) throw DomainError("radical_power: argument must be >= 2");
  unsigned r = 0;
  for (const auto& pp : f.factors) r = std::gcd(r, pp.exponent);
  u64 base = 1;
  for (const auto& pp : f.factors) {
    for (unsigned i = 0; i < pp.exponent / r; ++i) base *= pp.prime;
  }
  return {base, r};
}

RadicalPower radical_power(u64 n) {
  if (n < 2) throw DomainError("radical_power: argument must be >= 2");
  return radical_power(factorize(n));
}

std::vector<u64> unitary_divisors(const Factorization& f) {
  std::vector<u64> out{1};
  out.reserve(std::size_t{1} << f.factors.size());
  for (const auto& pp : f.factors) {
    u64 block = 1;
    for (unsigned i = 0; i < pp.exponent; ++i) block *= pp.prime;
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * block);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<unsigned> exact_power_exponent(u128 n, u64 g) {
  if (n == 0 || g < 2) return std::nullopt;
  unsigned k = 0;
  while (n % g == 0) {
    n /= g;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

std::optional<unsigned> exact_power_exponent(u64 n, u64 g) {
  return exact_power_exponent(static_cast<u128>(n), g);
}

std::optional<u64> checked_pow(u64 g, unsigned k) {
  u64 result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(result, g, &result)) return std::nullopt;
  }
  return result;
}

}  // namespace mdep
