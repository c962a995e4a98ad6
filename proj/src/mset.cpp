#include "mdep/mset.hpp"

#include <algorithm>

#include "mdep/errors.hpp"

namespace mdep {
namespace {

void require_positive(u64 d) {
  if (d == 0) {
    throw DomainError("d = 0: the set of dependent pairs (a, a) is infinite");
  }
}

i64 as_signed(u64 v) { return static_cast<i64>(v); }

bool is_power_of_two(u64 v) { return v != 0 && (v & (v - 1)) == 0; }

// p == 2^r + delta, evaluated exactly.
bool equals_two_pow_plus(u64 p, unsigned r, int delta) {
  if (r >= 127) return false;
  const u128 two_r = static_cast<u128>(1) << r;
  const u128 target = delta >= 0 ? two_r + static_cast<u128>(delta)
                                 : two_r - static_cast<u128>(-delta);
  return target == p;
}

std::size_t closed_two_three(unsigned r, unsigned s) {
  if (r <= 3) return s == 1 ? 11 : s == 2 ? 9 : 7;
  return s == 1 ? 9 : s == 2 ? 7 : 5;
}

std::size_t closed_two_prime(unsigned r, u64 p, unsigned s) {
  const bool fermat_r = equals_two_pow_plus(p, r, +1);
  const bool mersenne_r = equals_two_pow_plus(p, r, -1);
  if (fermat_r || mersenne_r) return s == 1 ? 9 : 7;
  const bool fermat = is_power_of_two(p - 1);
  const bool mersenne = is_power_of_two(p + 1);
  if (s == 1 && (fermat || mersenne)) return 7;
  return 5;
}

}  // namespace

MSetResult build_set(u64 d) {
  require_positive(d);
  if (d > kMaxSetDifference) {
    throw RangeError("build_set: difference too large for 64-bit coordinates");
  }
  MSetResult res;
  res.d = d;
  res.delta = d % 2 == 0 ? 1 : 0;
  if (d == 1) {
    res.pairs = {{-2, -1}, {1, 2}};
    res.m_value = 2;
    return res;
  }

  const Factorization f = factorize(d);
  res.plus_solutions = solve_plus(f);
  res.minus_solutions = solve_minus(f);
  res.n_plus = res.plus_solutions.size();
  res.n_minus = res.minus_solutions.size();

  if (d == 2) {
    res.pairs = {{-4, -2}, {-3, -1}, {-1, 1}, {1, 3}, {2, 4}};
    res.m_value = 5;
    return res;
  }

  const i64 sd = as_signed(d);
  auto& pairs = res.pairs;
  pairs = {{-sd - 1, -1}, {-sd + 1, 1}, {-1, sd - 1}, {1, sd + 1}};
  if (res.delta == 1) pairs.push_back({-sd / 2, sd / 2});
  for (const auto& s : res.plus_solutions) {
    const i64 gx = as_signed(*checked_pow(s.g, s.x));
    const i64 gy = as_signed(*checked_pow(s.g, s.y));
    pairs.push_back({-gx, gy});
    pairs.push_back({-gy, gx});
  }
  for (const auto& s : res.minus_solutions) {
    const i64 gx = as_signed(*checked_pow(s.g, s.x));
    const i64 gy = as_signed(*checked_pow(s.g, s.y));
    pairs.push_back({gx, gy});
    pairs.push_back({-gy, -gx});
  }
  std::sort(pairs.begin(), pairs.end());
  res.m_value = pairs.size();
  return res;
}

std::size_t m_value(const Factorization& d) {
  require_positive(d.value);
  if (d.value <= 2) return d.value == 1 ? 2 : 5;
  if (d.value % 2 == 1) return 4;
  return m_from_counts(d.value, solve_plus(d).size(), solve_minus(d).size());
}

std::size_t m_value(u64 d) {
  require_positive(d);
  if (d <= 2) return d == 1 ? 2 : 5;
  if (d % 2 == 1) return 4;
  return m_value(factorize(d));
}

std::string_view describe(ClosedShape shape) {
  switch (shape) {
    case ClosedShape::One:
      return "d = 1";
    case ClosedShape::Two:
      return "d = 2";
    case ClosedShape::Odd:
      return "odd";
    case ClosedShape::PowerOfTwo:
      return "power of two";
    case ClosedShape::TwoThree:
      return "2^r*3^s";
    case ClosedShape::TwoOddPrime:
      return "2^r*p^s";
  }
  return "unknown";
}

std::optional<ClosedForm> closed_form(const Factorization& f) {
  const u64 d = f.value;
  require_positive(d);
  if (d == 1) return ClosedForm{2, ClosedShape::One};
  if (d == 2) return ClosedForm{5, ClosedShape::Two};
  if (d % 2 == 1) return ClosedForm{4, ClosedShape::Odd};
  const unsigned r = f.factors.front().exponent;
  if (f.factors.size() == 1) return ClosedForm{7, ClosedShape::PowerOfTwo};
  if (f.factors.size() != 2) return std::nullopt;
  const auto [p, s] = f.factors[1];
  if (p == 3) return ClosedForm{closed_two_three(r, s), ClosedShape::TwoThree};
  return ClosedForm{closed_two_prime(r, p, s), ClosedShape::TwoOddPrime};
}

std::optional<ClosedForm> closed_form(u64 d) {
  require_positive(d);
  return closed_form(factorize(d));
}

}  // namespace mdep
