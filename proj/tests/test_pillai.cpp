#include <doctest.h>

#include <tuple>

#include <set>

#include "mdep/errors.hpp"
#include "mdep/oracle.hpp"
#include "mdep/pillai.hpp"

using namespace mdep;

namespace {

using Triples = std::vector<std::tuple<u64, unsigned, unsigned>>;

Triples triples(const std::vector<PrimitiveSolution>& sols) {
  Triples out;
  for (const auto& s : sols) out.emplace_back(s.g, s.x, s.y);
  return out;
}

}  // namespace

TEST_CASE("solve_plus examples") {
  CHECK(triples(solve_plus(12)) == Triples{{2, 2, 3}, {3, 1, 2}});
  // 18 - 9 = 9 = 3^2 would give y = x = 2; only 2^4 + 2 survives.
  CHECK(triples(solve_plus(18)) == Triples{{2, 1, 4}});
  CHECK(solve_plus(7).empty());
  CHECK(triples(solve_plus(30)) == Triples{{3, 1, 3}, {5, 1, 2}});
  CHECK(triples(solve_plus(65600)) == Triples{{2, 6, 16}, {40, 2, 3}});
  CHECK_THROWS_AS(solve_plus(0), DomainError);
}

TEST_CASE("solve_minus examples") {
  CHECK(triples(solve_minus(6)) == Triples{{2, 1, 3}, {3, 1, 2}});
  CHECK(triples(solve_minus(32)) == Triples{{2, 5, 6}});
  CHECK(triples(solve_minus(24299970)) == Triples{{30, 1, 5}, {4930, 1, 2}});
  CHECK(triples(solve_minus(30)) == Triples{{2, 1, 5}, {6, 1, 2}});
  CHECK_THROWS_AS(solve_minus(0), DomainError);
}

TEST_CASE("counts") {
  CHECK(n_plus(30) == 2);
  CHECK(n_minus(30) == 2);
  CHECK(n_plus(16) == 0);
  CHECK(n_plus(65600) == 2);
  for (unsigned r = 2; r < 64; ++r) {
    const u64 d = u64{1} << r;
    REQUIRE(n_plus(d) == 0);
    REQUIRE(triples(solve_minus(d)) == Triples{{2, r, r + 1}});
  }
}

TEST_CASE("minus solutions whose g^y exceeds 64 bits") {
  const u64 d = u64{1} << 63;
  const auto sols = solve_minus(d);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].y == 64);
  CHECK(satisfies(sols[0], d));
  // 2^64 - 2 = 2 (2^63 - 1): a = 2 gives 2^64.
  const u64 near = ~u64{0} - 1;
  bool found = false;
  for (const auto& s : solve_minus(near)) {
    CHECK(satisfies(s, near));
    found |= s.g == 2 && s.x == 1 && s.y == 64;
  }
  CHECK(found);
}

TEST_CASE("solutions satisfy their equation, are primitive and sorted") {
  for (u64 d = 1; d <= 30000; ++d) {
    for (const auto& list : {solve_plus(d), solve_minus(d)}) {
      REQUIRE(std::is_sorted(list.begin(), list.end(), canonical_less));
      std::set<u64> images;
      for (const auto& s : list) {
        REQUIRE(satisfies(s, d));
        REQUIRE(radical_power(s.g).exponent == 1);
        REQUIRE(s.y > s.x);
        REQUIRE(s.x >= 1);
        REQUIRE(images.insert(*checked_pow(s.g, s.x)).second);
      }
    }
  }
}

TEST_CASE("odd d has no solutions") {
  for (u64 d = 1; d <= 20001; d += 2) {
    REQUIRE(solve_plus(d).empty());
    REQUIRE(solve_minus(d).empty());
  }
}

TEST_CASE("a = g^x differs between the two equations unless d = 3 * 2^k") {
  for (u64 d = 2; d <= 100000; d += 2) {
    u64 odd = d;
    while (odd % 2 == 0) odd /= 2;
    if (odd == 3) continue;
    std::set<u64> images;
    for (const auto& s : solve_plus(d)) images.insert(*checked_pow(s.g, s.x));
    for (const auto& s : solve_minus(d)) {
      REQUIRE_MESSAGE(images.count(*checked_pow(s.g, s.x)) == 0, d);
    }
  }
}

TEST_CASE("solvers agree with brute force for d <= 2000") {
  for (u64 d = 1; d <= 2000; ++d) {
    REQUIRE(solve_plus(d) == oracle::brute_pillai(d, Sign::Plus));
    REQUIRE(solve_minus(d) == oracle::brute_pillai(d, Sign::Minus));
  }
}

TEST_CASE("satisfies rejects malformed triples") {
  CHECK_FALSE(satisfies({3, 2, 2, Sign::Plus}, 18));
  CHECK_FALSE(satisfies({1, 1, 2, Sign::Plus}, 2));
  CHECK_FALSE(satisfies({2, 0, 3, Sign::Minus}, 7));
  CHECK(satisfies({2, 1, 4, Sign::Plus}, 18));
}
