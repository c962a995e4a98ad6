#include "mdep/pillai.hpp"

#include <algorithm>

#include "mdep/errors.hpp"

namespace mdep {
namespace {

void require_positive(u64 d) {
  if (d == 0) throw DomainError("Pillai equations need d >= 1");
}

std::vector<PrimitiveSolution> solve(const Factorization& f, Sign sign) {
  require_positive(f.value);
  std::vector<PrimitiveSolution> out;
  for_each_unitary_radical(f.factors, [&](u64 a, u64 g, unsigned x) {
    const auto y = sign == Sign::Plus ? plus_exponent(f.value, a, g)
                                      : minus_exponent(f.value, a, g);
    if (y) out.push_back({g, x, *y, sign});
  });
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

std::string_view to_string(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

bool canonical_less(const PrimitiveSolution& a, const PrimitiveSolution& b) {
  if (a.g != b.g) return a.g < b.g;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

bool satisfies(const PrimitiveSolution& s, u64 d) {
  if (s.g < 2 || s.x < 1 || s.y <= s.x) return false;
  const auto gy = checked_pow(s.g, s.y);
  const auto gx = checked_pow(s.g, s.x);
  if (!gx) return false;
  if (s.sign == Sign::Plus) {
    return gy && static_cast<u128>(*gy) + *gx == d;
  }
  // g^y may exceed 64 bits while g^y - g^x still fits.
  u128 big = 1;
  for (unsigned i = 0; i < s.y; ++i) {
    big *= s.g;
    if (big > (static_cast<u128>(d) + *gx)) return false;
  }
  return big - *gx == d;
}

std::optional<unsigned> plus_exponent(u64 d, u64 a, u64 g) {
  // d - a > a enforces y > x: without it d = 18, a = 9 gives 3^2 + 3^2.
  if (a >= d || d - a <= a) return std::nullopt;
  const u64 rest = d - a;
  if (rest == 1) return std::nullopt;
  return exact_power_exponent(rest, g);
}

std::optional<unsigned> minus_exponent(u64 d, u64 a, u64 g) {
  const u128 rest = static_cast<u128>(d) + a;
  return exact_power_exponent(rest, g);
}

std::vector<PrimitiveSolution> solve_plus(const Factorization& d) {
  return solve(d, Sign::Plus);
}

std::vector<PrimitiveSolution> solve_minus(const Factorization& d) {
  return solve(d, Sign::Minus);
}

std::vector<PrimitiveSolution> solve_plus(u64 d) {
  require_positive(d);
  return solve_plus(factorize(d));
}

std::vector<PrimitiveSolution> solve_minus(u64 d) {
  require_positive(d);
  return solve_minus(factorize(d));
}

std::size_t n_plus(u64 d) { return solve_plus(d).size(); }
std::size_t n_minus(u64 d) { return solve_minus(d).size(); }

}  // namespace mdep
