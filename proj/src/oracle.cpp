#include "mdep/oracle.hpp"

#include <algorithm>

#include "mdep/errors.hpp"

namespace mdep::oracle {
namespace {

u64 abs_value(i64 v) { return v < 0 ? u64{0} - static_cast<u64>(v) : static_cast<u64>(v); }

// n == h^k for some k >= 1.
bool is_power_of(u64 n, u64 h) {
  u64 p = h;
  while (p < n) {
    if (p > n / h) return false;
    p *= h;
  }
  return p == n;
}

// rad[n] for n <= limit: smallest base whose power is n.
std::vector<u64> radical_table(u64 limit) {
  std::vector<u64> rad(limit + 1);
  for (u64 n = 0; n <= limit; ++n) rad[n] = n;
  for (u64 h = 2; h * h <= limit; ++h) {
    if (rad[h] != h) continue;
    for (u64 p = h * h; p <= limit; p *= h) {
      if (rad[p] == p) rad[p] = h;
      if (p > limit / h) break;
    }
  }
  return rad;
}

}  // namespace

u64 brute_radical(u64 n) {
  if (n < 2) throw DomainError("brute_radical: n must be >= 2");
  for (u64 h = 2; h * h <= n; ++h) {
    if (is_power_of(n, h)) return h;
  }
  return n;
}

bool brute_pair_dependent(i64 a, i64 b) {
  if (a == 0 || b == 0) return false;
  const u64 x = abs_value(a), y = abs_value(b);
  if (x == 1 || y == 1) return true;
  return brute_radical(x) == brute_radical(y);
}

std::vector<PrimitiveSolution> brute_pillai(u64 d, Sign sign) {
  if (d < 1 || d > kMaxPillaiD) {
    throw DomainError("brute_pillai: d outside [1, 1e6]");
  }
  std::vector<PrimitiveSolution> out;
  for (u64 g = 2; g <= d; ++g) {
    if (g * g > 2 * d) continue;  // y >= 2 forces g^2 <= g^y <= 2d
    if (brute_radical(g) != g) continue;
    u64 gx = g;
    for (unsigned x = 1; gx <= 2 * d; ++x, gx *= g) {
      u64 gy = gx * g;
      for (unsigned y = x + 1; gy <= 2 * d; ++y, gy *= g) {
        const bool hit = sign == Sign::Plus ? gy + gx == d : gy - gx == d;
        if (hit) out.push_back({g, x, y, sign});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.g != r.g ? l.g < r.g : l.x < r.x;
  });
  return out;
}

std::vector<DepPair> brute_mset(u64 d) {
  if (d < 1 || d > kMaxMsetD) {
    throw DomainError("brute_mset: d outside [1, 1e4]");
  }
  const i64 sd = static_cast<i64>(d);
  const i64 bound = 2 * sd + 2;
  const auto rad = radical_table(static_cast<u64>(bound + sd));
  std::vector<DepPair> out;
  for (i64 a = -bound; a <= bound; ++a) {
    const i64 b = a + sd;
    if (a == 0 || b == 0) continue;
    const u64 x = abs_value(a), y = abs_value(b);
    if (x == 1 || y == 1 || rad[x] == rad[y]) out.push_back({a, b});
  }
  return out;
}

}  // namespace mdep::oracle
