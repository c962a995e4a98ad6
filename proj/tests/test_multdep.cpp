#include <doctest.h>

#include <map>
#include <random>

#include "mdep/errors.hpp"
#include "mdep/mset.hpp"
#include "mdep/multdep.hpp"
#include "mdep/oracle.hpp"

using namespace mdep;

namespace {

// Independent of multdep: prime valuations by trial division.
std::map<i64, int> valuations(i64 z) {
  std::map<i64, int> v;
  i64 n = z < 0 ? -z : z;
  for (i64 p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++v[p];
      n /= p;
    }
  }
  if (n > 1) ++v[n];
  return v;
}

// Exhaustive search over |k_i| <= bound for a nonzero relation with
// prod z_i^k_i == 1 (sign included).
bool brute_relation(const std::vector<i64>& tuple, int bound) {
  std::vector<std::map<i64, int>> vals;
  for (i64 z : tuple) vals.push_back(valuations(z));
  std::vector<i64> primes;
  for (const auto& v : vals) {
    for (const auto& [p, e] : v) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  const std::size_t n = tuple.size(), m = primes.size();
  std::vector<std::vector<int>> rows(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto it = vals[i].find(primes[j]);
      rows[i][j] = it == vals[i].end() ? 0 : it->second;
    }
  }
  std::vector<int> k(n, -bound);
  for (;;) {
    bool nonzero = false, negative = false;
    for (std::size_t i = 0; i < n; ++i) {
      nonzero |= k[i] != 0;
      if (tuple[i] < 0 && (k[i] & 1)) negative = !negative;
    }
    if (nonzero && !negative) {
      bool zero = true;
      for (std::size_t j = 0; j < m && zero; ++j) {
        int s = 0;
        for (std::size_t i = 0; i < n; ++i) s += k[i] * rows[i][j];
        zero = s == 0;
      }
      if (zero) return true;
    }
    std::size_t i = 0;
    while (i < n && k[i] == bound) k[i++] = -bound;
    if (i == n) return false;
    ++k[i];
  }
}

}  // namespace

TEST_CASE("is_dependent examples") {
  CHECK(is_dependent(std::vector<i64>{2, 32}));
  CHECK_FALSE(is_dependent(std::vector<i64>{2, 3}));
  CHECK(is_dependent(std::vector<i64>{2, 3, 6}));
  CHECK(brute_relation({2, 3, 6}, 5));
  CHECK(is_dependent(std::vector<i64>{-1, 7}));
  CHECK(is_dependent(std::vector<i64>{-2, 2}));
  CHECK(is_dependent(std::vector<i64>{INT64_MIN, 2}));
}

TEST_CASE("6, 10, 15 are independent") {
  // 900 = 6 * 10 * 15 is not 1 and the exponent matrix is nonsingular
  // (determinant -2); the exhaustive search agrees.
  CHECK_FALSE(brute_relation({6, 10, 15}, 5));
  CHECK_FALSE(is_dependent(std::vector<i64>{6, 10, 15}));
  CHECK_FALSE(witness(std::vector<i64>{6, 10, 15}).has_value());
  // Adding 2 makes the four entries dependent: 6 * 10 = 15 * 2^2.
  const std::vector<i64> four{6, 10, 15, 2};
  const auto w = witness(four);
  REQUIRE(w.has_value());
  CHECK(w->exponents == std::vector<i64>{1, 1, -1, -2});
}

TEST_CASE("witness examples") {
  const std::vector<i64> t1{-3, 27};
  const auto w1 = witness(t1);
  REQUIRE(w1);
  CHECK(verify_witness(t1, *w1));
  CHECK(w1->exponents == std::vector<i64>{6, -2});

  const std::vector<i64> t2{5, 25};
  CHECK(witness(t2)->exponents == std::vector<i64>{2, -1});

  const std::vector<i64> t3{2, 3, 6};
  CHECK(witness(t3)->exponents == std::vector<i64>{1, 1, -1});

  CHECK(witness(std::vector<i64>{1, 5})->exponents == std::vector<i64>{1, 0});
  CHECK(witness(std::vector<i64>{-1, 5})->exponents == std::vector<i64>{2, 0});
  CHECK_FALSE(witness(std::vector<i64>{2, 3}).has_value());
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(is_dependent(std::vector<i64>{2, 0}), DomainError);
  CHECK_THROWS_AS(is_dependent(std::vector<i64>{2}), DomainError);
  CHECK_THROWS_AS(translations_pair(4, 4), DomainError);
  CHECK_THROWS_AS(translations_search(std::vector<i64>{1, 2, 2}, 0, 1), DomainError);
  CHECK_THROWS_AS(translations_search(std::vector<i64>{1, 2, 3}, 1, 0), DomainError);
  CHECK_THROWS_AS(translations_search(std::vector<i64>{1, 2, INT64_MAX}, 0, 1), RangeError);
}

TEST_CASE("verify_witness rejects bad vectors") {
  const std::vector<i64> t{2, 4};
  CHECK(verify_witness(t, {{2, -1}}));
  CHECK_FALSE(verify_witness(t, {{1, -1}}));
  CHECK_FALSE(verify_witness(t, {{0, 0}}));
  CHECK_FALSE(verify_witness(t, {{2}}));
  const std::vector<i64> neg{-2, 2};
  CHECK_FALSE(verify_witness(neg, {{1, -1}}));
  CHECK(verify_witness(neg, {{2, -2}}));
  // Exponents too large to multiply out take the valuation route.
  CHECK(verify_witness(neg, {{4000000, -4000000}}));
  CHECK_FALSE(verify_witness(neg, {{4000001, -4000001}}));
}

TEST_CASE("pair dependence matches the radical characterization") {
  for (i64 a = -200; a <= 200; ++a) {
    if (a == 0) continue;
    for (i64 b = -200; b <= 200; ++b) {
      if (b == 0) continue;
      const std::vector<i64> pair{a, b};
      REQUIRE(is_dependent(pair) == oracle::brute_pair_dependent(a, b));
    }
  }
}

TEST_CASE("small tuples agree with exponent search") {
  std::mt19937_64 rng(99);
  auto entry = [&] {
    i64 z = 0;
    while (z == 0) z = static_cast<i64>(rng() % 101) - 50;
    return z;
  };
  for (int iter = 0; iter < 600; ++iter) {
    const std::size_t n = 2 + iter % 2;
    std::vector<i64> t(n);
    for (auto& z : t) z = entry();
    const bool dep = is_dependent(t);
    const auto w = witness(t);
    REQUIRE(w.has_value() == dep);
    if (w) REQUIRE(verify_witness(t, *w));
    const bool brute = brute_relation(t, 12);
    if (brute) REQUIRE(dep);
    if (dep && !brute) {
      // Only possible when the unique primitive relation is too long.
      REQUIRE(exponent_rank(exponent_matrix(t)) == n - 1);
      i64 norm = 0;
      for (i64 k : w->exponents) norm = std::max(norm, k < 0 ? -k : k);
      REQUIRE(norm > 12);
    }
  }
}

TEST_CASE("appending a power of an entry makes the tuple dependent") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<i64> t;
    for (int i = 0; i < 3; ++i) t.push_back(static_cast<i64>(rng() % 1000) + 2);
    const i64 base = t[rng() % t.size()];
    i64 power = base;
    for (unsigned e = 1 + rng() % 3; e > 0 && power < (i64{1} << 40); --e) power *= base;
    t.push_back(rng() % 2 ? power : -power);
    REQUIRE(is_dependent(t));
    REQUIRE(verify_witness(t, *witness(t)));
  }
}

TEST_CASE("more entries than primes are always dependent") {
  std::mt19937_64 rng(11);
  const std::vector<i64> primes{2, 3, 5, 7, 11};
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<i64> t;
    for (std::size_t i = 0; i <= primes.size(); ++i) {
      i64 z = 1;
      for (i64 p : primes) {
        for (unsigned e = rng() % 4; e > 0; --e) z *= p;
      }
      t.push_back(rng() % 3 == 0 ? -z : z);
    }
    const auto w = witness(t);
    REQUIRE(w.has_value());
    REQUIRE(verify_witness(t, *w));
  }
}

TEST_CASE("translations_pair examples") {
  CHECK(translations_pair(1, 31) == std::vector<i64>{-37, -33, -32, -30, -28, -26, -16,
                                                      -6, -4, -2, 0, 1, 5});
  CHECK(translations_pair(0, 7) == std::vector<i64>{-8, -6, -1, 1});
  CHECK(translations_pair(0, 1) == std::vector<i64>{-2, 1});
  // Reversed orientation: (31 + t, 1 + t) is dependent iff (1 + t, 31 + t) is.
  CHECK(translations_pair(31, 1) == translations_pair(1, 31));
}

TEST_CASE("translations_pair is complete and sound") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const i64 a = static_cast<i64>(rng() % 2001) - 1000;
    const i64 b = static_cast<i64>(rng() % 2001) - 1000;
    if (a == b) continue;
    const auto ts = translations_pair(a, b);
    REQUIRE(ts.size() == m_value(static_cast<u64>(a < b ? b - a : a - b)));
    for (i64 t : ts) {
      REQUIRE(is_dependent(std::vector<i64>{a + t, b + t}));
    }
    // Window search over the pair finds exactly the same set.
    const i64 span = 2 * (a > b ? a - b : b - a) + 2 + (a < 0 ? -a : a) + (b < 0 ? -b : b);
    REQUIRE(translations_search(std::vector<i64>{a, b}, -span, span) == ts);
  }
}

TEST_CASE("translations_search examples") {
  const auto ts = translations_search(std::vector<i64>{1, 2, 3}, -10, 10);
  CHECK(std::find(ts.begin(), ts.end(), 1) != ts.end());
  // (1, 2, 4) at t = -1 and (3, 4, 6) at t = 1; (2, 3, 5) itself is not.
  CHECK(translations_search(std::vector<i64>{2, 3, 5}, -1, 1) == std::vector<i64>{-1, 1});
  const i64 t0 = 1234;
  CHECK(translations_search(std::vector<i64>{101 - t0, 103 - t0, 107 - t0}, t0, t0).empty());
}

TEST_CASE("translations_search does not depend on worker count") {
  const std::vector<i64> t{2, 3, 5, 9};
  const auto one = translations_search(t, -20000, 20000, 1);
  CHECK(one == translations_search(t, -20000, 20000, 4));
  CHECK(one == translations_search(t, -20000, 20000, 7));
  for (i64 x : one) {
    std::vector<i64> s;
    for (i64 z : t) s.push_back(z + x);
    const auto w = witness(s);
    REQUIRE(w.has_value());
    CHECK(verify_witness(s, *w));
  }
}
