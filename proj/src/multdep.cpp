#include "mdep/multdep.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "mdep/errors.hpp"
#include "mdep/mset.hpp"

namespace mdep {
namespace {

using boost::multiprecision::cpp_int;
using i128 = __int128;

struct Overflow {};

// Scalar policies for the fraction-free elimination. CheckedInt throws
// Overflow as soon as a value leaves the 64-bit range, and the caller retries
// with arbitrary precision.
struct CheckedInt {
  using value_type = i64;
  static value_type from(i64 v) { return v; }
  static value_type step(value_type p, value_type aij, value_type aic,
                         value_type arj, value_type prev) {
    const i128 num = static_cast<i128>(p) * aij - static_cast<i128>(aic) * arj;
    if (num % prev != 0) throw std::logic_error("inexact fraction-free step");
    const i128 q = num / prev;
    if (q > INT64_MAX || q < INT64_MIN) throw Overflow{};
    return static_cast<value_type>(q);
  }
};

struct BigInt {
  using value_type = cpp_int;
  static value_type from(i64 v) { return v; }
  static value_type step(const value_type& p, const value_type& aij,
                         const value_type& aic, const value_type& arj,
                         const value_type& prev) {
    value_type num = p * aij - aic * arj;
    value_type q, r;
    boost::multiprecision::divide_qr(num, prev, q, r);
    if (r != 0) throw std::logic_error("inexact fraction-free step");
    return q;
  }
};

template <class T>
using Matrix = std::vector<std::vector<typename T::value_type>>;

struct Reduced {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Fraction-free Gauss-Jordan: after the call every pivot equals the last
// pivot value and pivot columns are zero outside their pivot row. Every
// intermediate entry is a minor of the input, so all divisions are exact.
template <class T>
Reduced gauss_jordan(Matrix<T>& a) {
  Reduced out;
  if (a.empty()) return out;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  typename T::value_type prev = T::from(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const auto p = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const auto aic = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) continue;
        a[i][j] = T::step(p, a[i][j], aic, a[r][j], prev);
      }
      a[i][c] = 0;
    }
    prev = p;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

// Transposed exponent matrix: one row per prime, one column per entry.
template <class T>
Matrix<T> transposed(const ExponentMatrix& m) {
  const std::size_t n = m.rows.size();
  Matrix<T> a(m.primes.size(),
              std::vector<typename T::value_type>(n, T::from(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.primes.size(); ++j) {
      a[j][i] = T::from(m.rows[i][j]);
    }
  }
  return a;
}

// Primitive integer kernel vector of the transposed matrix, or nullopt.
template <class T>
std::optional<std::vector<cpp_int>> kernel_vector(const ExponentMatrix& m) {
  const std::size_t n = m.rows.size();
  auto a = transposed<T>(m);
  const Reduced red = gauss_jordan<T>(a);
  if (red.rank == n) return std::nullopt;

  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;

  std::vector<cpp_int> k(n, 0);
  if (red.rank == 0) {
    k[free_col] = 1;
    return k;
  }
  // Each pivot row reads P * k[pivot] + a[row][free] * k[free] = 0.
  const cpp_int pivot_value = cpp_int(a[0][red.pivot_cols[0]]);
  k[free_col] = pivot_value;
  for (std::size_t row = 0; row < red.rank; ++row) {
    k[red.pivot_cols[row]] = -cpp_int(a[row][free_col]);
  }
  return k;
}

std::optional<std::vector<cpp_int>> kernel_vector(const ExponentMatrix& m) {
  try {
    return kernel_vector<CheckedInt>(m);
  } catch (const Overflow&) {
    return kernel_vector<BigInt>(m);
  }
}

u64 magnitude(i64 v) {
  return v < 0 ? u64{0} - static_cast<u64>(v) : static_cast<u64>(v);
}

cpp_int big_pow(cpp_int base, u64 exp) {
  cpp_int result = 1;
  while (exp != 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp != 0) base *= base;
  }
  return result;
}

// Only multiply out witnesses whose products stay below this many bits.
constexpr u64 kDirectProductBits = u64{1} << 18;

void check_tuple(std::span<const i64> tuple) {
  if (tuple.size() < 2) throw DomainError("need at least two entries");
  for (i64 z : tuple) {
    if (z == 0) {
      throw DomainError(
          "zero entry: tuples with a zero coordinate are never considered "
          "multiplicatively dependent");
    }
  }
}

}  // namespace

ExponentMatrix exponent_matrix(std::span<const i64> tuple) {
  check_tuple(tuple);
  std::vector<Factorization> fs;
  fs.reserve(tuple.size());
  std::set<u64> support;
  for (i64 z : tuple) {
    fs.push_back(factorize(magnitude(z)));
    for (const auto& pp : fs.back().factors) support.insert(pp.prime);
  }
  ExponentMatrix m;
  m.primes.assign(support.begin(), support.end());
  for (const auto& f : fs) {
    std::vector<unsigned> row(m.primes.size(), 0);
    for (const auto& pp : f.factors) {
      const auto it = std::lower_bound(m.primes.begin(), m.primes.end(), pp.prime);
      row[static_cast<std::size_t>(it - m.primes.begin())] = pp.exponent;
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::size_t exponent_rank(const ExponentMatrix& m) {
  try {
    auto a = transposed<CheckedInt>(m);
    return gauss_jordan<CheckedInt>(a).rank;
  } catch (const Overflow&) {
    auto a = transposed<BigInt>(m);
    return gauss_jordan<BigInt>(a).rank;
  }
}

bool is_dependent(std::span<const i64> tuple) {
  const ExponentMatrix m = exponent_matrix(tuple);
  return exponent_rank(m) < tuple.size();
}

std::optional<DependenceWitness> witness(std::span<const i64> tuple) {
  const ExponentMatrix m = exponent_matrix(tuple);
  auto kernel = kernel_vector(m);
  if (!kernel) return std::nullopt;
  auto& k = *kernel;

  cpp_int content = 0;
  for (const auto& v : k) content = gcd(content, abs(v));
  for (auto& v : k) v /= content;
  const auto first = std::find_if(k.begin(), k.end(),
                                  [](const cpp_int& v) { return v != 0; });
  if (*first < 0) {
    for (auto& v : k) v = -v;
  }

  bool negative = false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (tuple[i] < 0 && bit_test(abs(k[i]), 0)) negative = !negative;
  }
  if (negative) {
    for (auto& v : k) v *= 2;
  }

  DependenceWitness w;
  for (const auto& v : k) {
    if (v > INT64_MAX || v < INT64_MIN) {
      throw RangeError("witness exponent exceeds 64 bits");
    }
    w.exponents.push_back(static_cast<i64>(v));
  }
  if (!verify_witness(tuple, w)) {
    throw std::logic_error("witness failed exact verification");
  }
  return w;
}

bool verify_witness(std::span<const i64> tuple, const DependenceWitness& w) {
  if (w.exponents.size() != tuple.size()) return false;
  if (std::all_of(w.exponents.begin(), w.exponents.end(),
                  [](i64 k) { return k == 0; })) {
    return false;
  }
  if (std::any_of(tuple.begin(), tuple.end(), [](i64 z) { return z == 0; })) {
    return false;
  }

  u64 bits = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const u64 len = 64 - static_cast<u64>(__builtin_clzll(magnitude(tuple[i])));
    bits += len * magnitude(w.exponents[i]);
    if (bits > kDirectProductBits) break;
  }

  if (bits <= kDirectProductBits) {
    // Compare the numerator and denominator of the product directly.
    cpp_int num = 1, den = 1;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      const i64 k = w.exponents[i];
      if (k > 0) num *= big_pow(cpp_int(tuple[i]), magnitude(k));
      if (k < 0) den *= big_pow(cpp_int(tuple[i]), magnitude(k));
    }
    return num == den;
  }

  // Large exponents: compare prime valuations and the sign instead.
  std::map<u64, cpp_int> valuation;
  bool negative = false;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const i64 k = w.exponents[i];
    if (tuple[i] < 0 && (k & 1) != 0) negative = !negative;
    for (const auto& pp : factorize(magnitude(tuple[i])).factors) {
      valuation[pp.prime] += cpp_int(k) * pp.exponent;
    }
  }
  if (negative) return false;
  return std::all_of(valuation.begin(), valuation.end(),
                     [](const auto& kv) { return kv.second == 0; });
}

std::vector<i64> translations_pair(i64 a, i64 b) {
  if (a == b) {
    throw DomainError("a = b: every translate (a + t, a + t) is dependent");
  }
  const bool swapped = b < a;
  i64 diff = 0;
  if (__builtin_sub_overflow(swapped ? a : b, swapped ? b : a, &diff) ||
      static_cast<u64>(diff) > kMaxSetDifference) {
    throw RangeError("translations_pair: difference out of range");
  }
  const MSetResult set = build_set(static_cast<u64>(diff));
  std::vector<i64> ts;
  ts.reserve(set.pairs.size());
  for (const auto& p : set.pairs) {
    // For b < a the pairs of M(a - b) are used with coordinates swapped.
    const i64 first = swapped ? p.b : p.a;
    i64 t = 0;
    if (__builtin_sub_overflow(first, a, &t)) {
      throw RangeError("translations_pair: translation out of range");
    }
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

std::vector<i64> translations_search(std::span<const i64> tuple, i64 t_lo,
                                     i64 t_hi, unsigned workers) {
  if (tuple.size() < 2) throw DomainError("need at least two entries");
  {
    std::vector<i64> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("entries must be pairwise distinct");
    }
  }
  if (t_lo > t_hi) throw DomainError("empty translation window");
  for (i64 z : tuple) {
    i64 tmp = 0;
    if (__builtin_add_overflow(z, t_lo, &tmp) ||
        __builtin_add_overflow(z, t_hi, &tmp)) {
      throw RangeError("translation window overflows 64-bit entries");
    }
  }

  const u64 width = static_cast<u64>(t_hi) - static_cast<u64>(t_lo) + 1;
  workers = std::max(1u, workers);
  if (width < 4096) workers = 1;
  std::vector<std::vector<i64>> found(workers);

  auto run = [&](unsigned w) {
    const u64 begin = width / workers * w;
    const u64 end = w + 1 == workers ? width : width / workers * (w + 1);
    std::vector<i64> shifted(tuple.size());
    for (u64 off = begin; off < end; ++off) {
      const i64 t = static_cast<i64>(static_cast<u64>(t_lo) + off);
      bool has_zero = false;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        shifted[i] = tuple[i] + t;
        has_zero |= shifted[i] == 0;
      }
      if (!has_zero && is_dependent(shifted)) found[w].push_back(t);
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::vector<i64> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mdep
