#include <doctest.h>

#include <random>
#include <set>

#include "mdep/errors.hpp"
#include "mdep/mset.hpp"
#include "mdep/multdep.hpp"

using namespace mdep;

namespace {

std::set<DepPair> as_set(const std::vector<DepPair>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("build_set(30) is the 13 listed pairs") {
  const std::set<DepPair> expected{
      {-15, 15}, {-1, 29},  {-29, 1}, {1, 31},  {-31, -1}, {-5, 25}, {-25, 5},
      {-3, 27},  {-27, 3},  {2, 32},  {-32, -2}, {6, 36},  {-36, -6}};
  const auto r = build_set(30);
  CHECK(as_set(r.pairs) == expected);
  CHECK(r.pairs.size() == 13);
  CHECK(r.m_value == 13);
  CHECK(r.n_plus == 2);
  CHECK(r.n_minus == 2);
  CHECK(r.delta == 1);
}

TEST_CASE("build_set small and odd differences") {
  CHECK(build_set(1).pairs == std::vector<DepPair>{{-2, -1}, {1, 2}});
  CHECK(build_set(2).pairs ==
        std::vector<DepPair>{{-4, -2}, {-3, -1}, {-1, 1}, {1, 3}, {2, 4}});
  CHECK(build_set(7).pairs == std::vector<DepPair>{{-8, -1}, {-6, 1}, {-1, 6}, {1, 8}});
  CHECK_THROWS_AS(build_set(0), DomainError);
  CHECK_THROWS_AS(build_set(kMaxSetDifference + 1), RangeError);
}

TEST_CASE("m_value examples") {
  CHECK(m_value(30) == 13);
  CHECK(m_value(1024) == 7);
  CHECK(m_value(9702) == 11);
  CHECK(m_value(1) == 2);
  CHECK(m_value(2) == 5);
  CHECK(m_value(u64{1} << 63) == 7);
  CHECK(m_value(~u64{0}) == 4);
  CHECK_THROWS_AS(m_value(0), DomainError);
}

TEST_CASE("closed_form examples") {
  CHECK(closed_form(20)->value == 9);
  CHECK(closed_form(40)->value == 7);
  CHECK(closed_form(48)->value == 9);
  CHECK(closed_form(6)->value == 11);
  CHECK(closed_form(18)->value == 9);
  CHECK(closed_form(1024)->shape == ClosedShape::PowerOfTwo);
  CHECK(closed_form(99)->shape == ClosedShape::Odd);
  CHECK_FALSE(closed_form(30).has_value());
  // 2 * 65537: a Fermat prime that is not 2^1 + 1.
  CHECK(closed_form(2 * 65537)->value == 7);
  // 2^7 * 127: Mersenne prime equal to 2^7 - 1.
  CHECK(closed_form(128 * 127)->value == 9);
  // 2 * 127^2: Mersenne prime, s = 2, not 2^1 - 1.
  CHECK(closed_form(2 * 127 * 127)->value == 5);
  CHECK_THROWS_AS(closed_form(0), DomainError);
}

TEST_CASE("closed forms beyond the scanned range match the solver") {
  std::mt19937_64 rng(7);
  const std::vector<u64> primes{3, 5, 7, 11, 13, 17, 31, 127, 257, 8191, 65537, 131071, 1000003};
  for (int i = 0; i < 3000; ++i) {
    const u64 p = primes[rng() % primes.size()];
    u64 d = u64{1} << (1 + rng() % 20);
    const unsigned s = 1 + rng() % 4;
    bool ok = true;
    for (unsigned k = 0; k < s && ok; ++k) ok = !__builtin_mul_overflow(d, p, &d);
    if (!ok) continue;
    const auto cf = closed_form(d);
    REQUIRE(cf.has_value());
    REQUIRE_MESSAGE(cf->value == m_value(d), d);
  }
}

TEST_CASE("formula, set size and closed form agree for d <= 1e5") {
  for (u64 d = 1; d <= 100000; ++d) {
    const auto r = build_set(d);
    REQUIRE(r.m_value == r.pairs.size());
    REQUIRE(m_value(d) == r.pairs.size());
    if (d >= 3) REQUIRE(r.m_value == m_from_counts(d, r.n_plus, r.n_minus));
    if (const auto cf = closed_form(d)) REQUIRE_MESSAGE(cf->value == r.m_value, d);
    if (d >= 3 && d % 2 == 1) REQUIRE(r.m_value == 4);
    if (d >= 4 && d % 2 == 0) {
      REQUIRE(r.m_value % 2 == 1);
      REQUIRE(r.m_value >= 5);
    }
  }
}

TEST_CASE("pairs are symmetric, distinct, nonzero and dependent") {
  for (u64 d = 1; d <= 3000; ++d) {
    const auto r = build_set(d);
    const auto s = as_set(r.pairs);
    REQUIRE(s.size() == r.pairs.size());
    REQUIRE(std::is_sorted(r.pairs.begin(), r.pairs.end()));
    for (const auto& p : r.pairs) {
      REQUIRE(p.a != 0);
      REQUIRE(p.b != 0);
      REQUIRE(p.b - p.a == static_cast<i64>(d));
      REQUIRE(s.count({-p.b, -p.a}) == 1);
      const std::vector<i64> pair{p.a, p.b};
      REQUIRE(is_dependent(pair));
    }
  }
}

TEST_CASE("upper bounds for even d with at least three primes") {
  for (u64 d = 2; d <= 200000; d += 2) {
    const auto f = factorize(d);
    const std::size_t m = f.distinct_primes();
    if (m < 3) continue;
    const std::size_t value = m_value(f);
    REQUIRE(value <= (std::size_t{1} << (m + 1)) + 1);
    if (f.squarefree()) {
      const std::size_t refined = m == 3 ? 13 : (std::size_t{1} << (m + 1)) + 7 - 4 * m;
      REQUIRE(value <= refined);
    }
  }
}

TEST_CASE("n^2 + n has M >= 9") {
  for (u64 n = 2; n <= 3000; ++n) REQUIRE(m_value(n * n + n) >= 9);
}
