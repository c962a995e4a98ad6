#include "mdep/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "mdep/mset.hpp"

namespace mdep {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr std::size_t kMaxFactors = 15;  // 16 distinct primes exceed 2^64
constexpr std::uint32_t kBasePrimeCap = 1u << 22;
constexpr std::string_view kCheckpointHeader = "mdep-scan-checkpoint v1";

struct SegmentResult {
  u64 index = 0;
  u64 numbers = 0;
  std::map<std::size_t, u64> histogram;
  std::vector<ExceptionalRecord> exceptional;
  std::vector<u64> bound_violations;
  std::vector<u64> conjecture_violations;
};

struct Plan {
  ScanConfig cfg;
  u64 segments = 0;
  std::vector<std::uint32_t> base_primes;
  u64 sieve_limit = 0;  // every prime <= sieve_limit is in base_primes
};

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 segment_lo(const ScanConfig& cfg, u64 index) {
  return static_cast<u64>(static_cast<u128>(cfg.lo) +
                          static_cast<u128>(index) * cfg.segment_size);
}

u64 segment_hi(const ScanConfig& cfg, u64 index) {
  const u128 end = static_cast<u128>(cfg.lo) +
                   static_cast<u128>(index + 1) * cfg.segment_size - 1;
  return end > cfg.hi ? cfg.hi : static_cast<u64>(end);
}

// The first two a = g^x found for each equation are kept; a third one marks
// the accumulator as overflowed and the caller recomputes exactly.
struct PairAccumulator {
  std::array<u64, 2> slots{};
  unsigned size = 0;
  bool overflow = false;

  void add(u64 a) {
    if (size < slots.size()) {
      slots[size++] = a;
    } else {
      overflow = true;
    }
  }
};

Factorization to_factorization(u64 d, std::span<const PrimePower> factors) {
  return Factorization{d, {factors.begin(), factors.end()}};
}

bool violates_upper_bound(std::span<const PrimePower> factors, std::size_t m) {
  const std::size_t primes = factors.size();
  if (primes < 3) return false;
  const bool squarefree = std::all_of(factors.begin(), factors.end(),
                                      [](const PrimePower& pp) { return pp.exponent == 1; });
  const u64 general = (u64{1} << (primes + 1)) + 1;
  if (m > general) return true;
  if (!squarefree) return false;
  const u64 refined = primes == 3 ? 13 : (u64{1} << (primes + 1)) + 7 - 4 * primes;
  return m > refined;
}

void evaluate(u64 d, std::span<const PrimePower> factors, const CollectFlags& collect,
              SegmentResult& out) {
  PairAccumulator plus, minus;
  for_each_unitary_radical(factors, [&](u64 a, u64 g, unsigned) {
    if (plus_exponent(d, a, g)) plus.add(a);
    if (minus_exponent(d, a, g)) minus.add(a);
  });

  std::size_t np = plus.size, nm = minus.size;
  std::optional<Factorization> full;
  auto factorization = [&]() -> const Factorization& {
    if (!full) full = to_factorization(d, factors);
    return *full;
  };
  if (plus.overflow) np = solve_plus(factorization()).size();
  if (minus.overflow) nm = solve_minus(factorization()).size();

  const std::size_t m = m_from_counts(d, np, nm);
  ++out.numbers;
  if (collect.histogram) ++out.histogram[m];
  if (np > 2 || nm > 2 || m > 13) out.conjecture_violations.push_back(d);
  if (violates_upper_bound(factors, m)) out.bound_violations.push_back(d);

  if (collect.nplus2 && np >= 2) {
    out.exceptional.push_back(
        {d, ExceptionalKind::NPlus2, m, solve_plus(factorization())});
  }
  if (collect.nminus2 && nm >= 2) {
    out.exceptional.push_back(
        {d, ExceptionalKind::NMinus2, m, solve_minus(factorization())});
  }
  if (collect.m_threshold && m >= *collect.m_threshold) {
    auto sols = solve_plus(factorization());
    auto minus_sols = solve_minus(factorization());
    sols.insert(sols.end(), minus_sols.begin(), minus_sols.end());
    out.exceptional.push_back({d, ExceptionalKind::MAtLeast, m, std::move(sols)});
  }
}

void evaluate_odd(u64 d, const CollectFlags& collect, SegmentResult& out) {
  const std::size_t m = d == 1 ? 2 : 4;
  ++out.numbers;
  if (collect.histogram) ++out.histogram[m];
  if (collect.m_threshold && m >= *collect.m_threshold) {
    out.exceptional.push_back({d, ExceptionalKind::MAtLeast, m, {}});
  }
}

SegmentResult process_segment(const Plan& plan, u64 index) {
  const ScanConfig& cfg = plan.cfg;
  SegmentResult out;
  out.index = index;
  const u64 lo = segment_lo(cfg, index);
  const u64 hi = segment_hi(cfg, index);
  const u64 first_even = lo + (lo & 1);  // wraps to 0 only for lo = 2^64 - 1

  // Factor the even numbers of [lo, hi] by sieving with the base primes.
  const u64 count = first_even < lo || first_even > hi ? 0 : (hi - first_even) / 2 + 1;
  thread_local std::vector<u64> rest;
  thread_local std::vector<PrimePower> buf;
  thread_local std::vector<std::uint8_t> used;
  rest.resize(count);
  buf.resize(count * kMaxFactors);
  used.assign(count, 0);
  for (u64 j = 0; j < count; ++j) rest[j] = first_even + 2 * j;

  auto strip = [&](u64 j, std::uint32_t p) {
    unsigned e = 0;
    do {
      rest[j] /= p;
      ++e;
    } while (rest[j] % p == 0);
    buf[j * kMaxFactors + used[j]++] = {p, e};
  };
  for (std::uint32_t p : plan.base_primes) {
    if (static_cast<u64>(p) * p > hi) break;
    if (p == 2) {
      for (u64 j = 0; j < count; ++j) strip(j, 2);
      continue;
    }
    const u64 step = 2 * static_cast<u64>(p);
    const u64 r = first_even % step;
    for (u64 j = r == 0 ? 0 : (step - r) / 2; j < count; j += p) strip(j, p);
  }

  const u128 limit_sq = static_cast<u128>(plan.sieve_limit + 1) * (plan.sieve_limit + 1);
  for (u64 j = 0; j < count; ++j) {
    const u64 d = first_even + 2 * j;
    if (rest[j] > 1) {
      if (rest[j] < limit_sq) {
        buf[j * kMaxFactors + used[j]++] = {rest[j], 1};
      } else {
        for (const auto& pp : factorize(rest[j]).factors) {
          buf[j * kMaxFactors + used[j]++] = pp;
        }
      }
    }
    evaluate(d, std::span<const PrimePower>(&buf[j * kMaxFactors], used[j]),
             cfg.collect, out);
  }
  if (cfg.include_odd) {
    for (u64 d = lo | 1; d <= hi; d += 2) {
      evaluate_odd(d, cfg.collect, out);
      if (hi - d < 2) break;
    }
  }
  std::sort(out.exceptional.begin(), out.exceptional.end(),
            [](const auto& a, const auto& b) {
              return a.d != b.d ? a.d < b.d : a.kind < b.kind;
            });
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoint serialization.

json config_to_json(const ScanConfig& cfg) {
  json j;
  j["lo"] = cfg.lo;
  j["hi"] = cfg.hi;
  j["segment_size"] = cfg.segment_size;
  j["include_odd"] = cfg.include_odd;
  j["histogram"] = cfg.collect.histogram;
  j["nplus2"] = cfg.collect.nplus2;
  j["nminus2"] = cfg.collect.nminus2;
  j["m_threshold"] = cfg.collect.m_threshold ? json(*cfg.collect.m_threshold) : json(nullptr);
  return j;
}

ScanConfig config_from_json(const json& j) {
  ScanConfig cfg;
  cfg.lo = j.at("lo").get<u64>();
  cfg.hi = j.at("hi").get<u64>();
  cfg.segment_size = j.at("segment_size").get<u64>();
  cfg.include_odd = j.at("include_odd").get<bool>();
  cfg.collect.histogram = j.at("histogram").get<bool>();
  cfg.collect.nplus2 = j.at("nplus2").get<bool>();
  cfg.collect.nminus2 = j.at("nminus2").get<bool>();
  if (!j.at("m_threshold").is_null()) {
    cfg.collect.m_threshold = j.at("m_threshold").get<std::size_t>();
  }
  return cfg;
}

json segment_to_json(const SegmentResult& s) {
  json j;
  j["i"] = s.index;
  j["n"] = s.numbers;
  j["h"] = json::array();
  for (const auto& [m, c] : s.histogram) j["h"].push_back({m, c});
  j["x"] = json::array();
  for (const auto& r : s.exceptional) {
    json sols = json::array();
    for (const auto& sol : r.solutions) {
      sols.push_back({sol.g, sol.x, sol.y, sol.sign == Sign::Plus ? 1 : -1});
    }
    j["x"].push_back({r.d, to_string(r.kind), r.m_value, sols});
  }
  j["b"] = s.bound_violations;
  j["c"] = s.conjecture_violations;
  return j;
}

SegmentResult segment_from_json(const json& j) {
  SegmentResult s;
  s.index = j.at("i").get<u64>();
  s.numbers = j.at("n").get<u64>();
  for (const auto& kv : j.at("h")) {
    s.histogram[kv.at(0).get<std::size_t>()] = kv.at(1).get<u64>();
  }
  for (const auto& x : j.at("x")) {
    ExceptionalRecord r;
    r.d = x.at(0).get<u64>();
    const auto kind = parse_exceptional_kind(x.at(1).get<std::string>());
    if (!kind) throw std::runtime_error("unknown exceptional kind");
    r.kind = *kind;
    r.m_value = x.at(2).get<std::size_t>();
    for (const auto& sol : x.at(3)) {
      r.solutions.push_back({sol.at(0).get<u64>(), sol.at(1).get<unsigned>(),
                             sol.at(2).get<unsigned>(),
                             sol.at(3).get<int>() > 0 ? Sign::Plus : Sign::Minus});
    }
    s.exceptional.push_back(std::move(r));
  }
  s.bound_violations = j.at("b").get<std::vector<u64>>();
  s.conjecture_violations = j.at("c").get<std::vector<u64>>();
  return s;
}

struct CheckpointState {
  ScanConfig cfg;
  std::string digest;
  std::map<u64, SegmentResult> done;
};

CheckpointState read_checkpoint(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    if (!fs::exists(path)) {
      throw CheckpointError(CheckpointError::Kind::Missing,
                            "checkpoint not found: " + path.string());
    }
    throw CheckpointError(CheckpointError::Kind::Io,
                          "cannot read checkpoint: " + path.string());
  }
  auto corrupt = [&](const std::string& why) {
    return CheckpointError(CheckpointError::Kind::Corrupt,
                           "corrupt checkpoint " + path.string() + ": " + why);
  };
  CheckpointState st;
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointHeader) throw corrupt("bad header");
  if (!std::getline(in, line) || line.rfind("digest ", 0) != 0) throw corrupt("missing digest");
  st.digest = line.substr(7);
  try {
    if (!std::getline(in, line) || line.rfind("config ", 0) != 0) throw corrupt("missing config");
    st.cfg = config_from_json(json::parse(line.substr(7)));
    if (config_digest(st.cfg) != st.digest) throw corrupt("digest does not match config");
    validate(st.cfg);
    const u64 total = (st.cfg.hi - st.cfg.lo) / st.cfg.segment_size + 1;
    bool ended = false;
    while (std::getline(in, line)) {
      if (line.rfind("segment ", 0) == 0) {
        SegmentResult s = segment_from_json(json::parse(line.substr(8)));
        if (s.index >= total) throw corrupt("segment index out of range");
        if (st.done.count(s.index) != 0) throw corrupt("segment recorded twice");
        st.done.emplace(s.index, std::move(s));
      } else if (line.rfind("end ", 0) == 0) {
        if (std::stoull(line.substr(4)) != st.done.size()) throw corrupt("segment count mismatch");
        ended = true;
        break;
      } else {
        throw corrupt("unexpected line");
      }
    }
    if (!ended) throw corrupt("truncated");
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw corrupt(e.what());
  }
  return st;
}

void write_checkpoint(const fs::path& path, const CheckpointState& st) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw CheckpointError(CheckpointError::Kind::Io,
                            "cannot write checkpoint: " + tmp.string());
    }
    out << kCheckpointHeader << '\n'
        << "digest " << st.digest << '\n'
        << "config " << config_to_json(st.cfg).dump() << '\n';
    for (const auto& [idx, seg] : st.done) {
      out << "segment " << segment_to_json(seg).dump() << '\n';
    }
    out << "end " << st.done.size() << '\n';
    out.flush();
    if (!out) {
      throw CheckpointError(CheckpointError::Kind::Io,
                            "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw CheckpointError(CheckpointError::Kind::Io,
                          "cannot replace checkpoint: " + ec.message());
  }
}

ScanReport assemble(const Plan& plan, const std::map<u64, SegmentResult>& done) {
  ScanReport r;
  r.lo = plan.cfg.lo;
  r.hi = plan.cfg.hi;
  r.include_odd = plan.cfg.include_odd;
  r.segments_total = plan.segments;
  r.segments_done = done.size();
  r.complete = done.size() == plan.segments;
  for (const auto& [idx, seg] : done) {
    r.numbers_scanned += seg.numbers;
    for (const auto& [m, c] : seg.histogram) r.histogram[m] += c;
    r.exceptional.insert(r.exceptional.end(), seg.exceptional.begin(),
                         seg.exceptional.end());
    r.audit.bound_violations.insert(r.audit.bound_violations.end(),
                                    seg.bound_violations.begin(),
                                    seg.bound_violations.end());
    r.audit.conjecture_violations.insert(r.audit.conjecture_violations.end(),
                                         seg.conjecture_violations.begin(),
                                         seg.conjecture_violations.end());
  }
  return r;
}

ScanReport run(const ScanConfig& cfg, CheckpointState state) {
  const auto start = std::chrono::steady_clock::now();
  Plan plan;
  plan.cfg = cfg;
  plan.segments = (cfg.hi - cfg.lo) / cfg.segment_size + 1;
  plan.sieve_limit = std::min<u64>(isqrt(cfg.hi), kBasePrimeCap);
  plan.base_primes = primes_up_to(static_cast<std::uint32_t>(plan.sieve_limit));

  std::vector<u64> pending;
  for (u64 i = 0; i < plan.segments; ++i) {
    if (state.done.count(i) == 0) pending.push_back(i);
  }
  const u64 limit = cfg.stop_after_segments.value_or(pending.size());

  std::mutex mu;
  std::condition_variable cv;
  std::vector<SegmentResult> inbox;
  std::exception_ptr failure;
  std::atomic<u64> next{0};
  unsigned active = static_cast<unsigned>(
      std::max<u64>(1, std::min<u64>(cfg.workers, pending.size())));
  unsigned running = active;

  auto worker = [&] {
    try {
      for (;;) {
        const u64 k = next.fetch_add(1);
        if (k >= pending.size() || k >= limit) break;
        SegmentResult res = process_segment(plan, pending[k]);
        std::lock_guard lock(mu);
        inbox.push_back(std::move(res));
        cv.notify_one();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next.store(pending.size());
    }
    std::lock_guard lock(mu);
    --running;
    cv.notify_one();
  };

  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < active; ++w) pool.emplace_back(worker);

    // This thread is the only checkpoint writer.
    auto last_write = std::chrono::steady_clock::now();
    try {
    for (;;) {
      std::vector<SegmentResult> batch;
      bool finished = false;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return !inbox.empty() || running == 0; });
        batch.swap(inbox);
        finished = running == 0 && inbox.empty();
      }
      for (auto& seg : batch) {
        const u64 idx = seg.index;
        if (!state.done.emplace(idx, std::move(seg)).second) {
          throw std::logic_error("segment merged twice");
        }
      }
      if (cfg.on_progress && !batch.empty()) {
        cfg.on_progress(state.done.size(), plan.segments);
      }
      if (cfg.checkpoint_path && !failure) {
        const auto now = std::chrono::steady_clock::now();
        if (finished || now - last_write > std::chrono::seconds(1)) {
          write_checkpoint(*cfg.checkpoint_path, state);
          last_write = now;
        }
      }
      if (finished) break;
    }
    } catch (...) {
      next.store(pending.size());
      throw;
    }
  }
  if (failure) std::rethrow_exception(failure);

  ScanReport report = assemble(plan, state.done);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

std::string_view to_string(ExceptionalKind k) {
  switch (k) {
    case ExceptionalKind::NPlus2:
      return "nplus2";
    case ExceptionalKind::NMinus2:
      return "nminus2";
    case ExceptionalKind::MAtLeast:
      return "mge";
  }
  return "unknown";
}

std::optional<ExceptionalKind> parse_exceptional_kind(std::string_view s) {
  if (s == "nplus2") return ExceptionalKind::NPlus2;
  if (s == "nminus2") return ExceptionalKind::NMinus2;
  if (s == "mge") return ExceptionalKind::MAtLeast;
  return std::nullopt;
}

std::vector<std::size_t> ScanReport::unexpected_m_values() const {
  std::vector<std::size_t> out;
  for (const auto& [m, c] : histogram) {
    const bool even_d_value = m == 5 || m == 7 || m == 9 || m == 11 || m == 13;
    const bool odd_d_value = include_odd && (m == 2 || m == 4);
    if (!even_d_value && !odd_d_value) out.push_back(m);
  }
  return out;
}

void validate(const ScanConfig& cfg) {
  if (cfg.lo == 0) throw ScanConfigError("scan range must start at d >= 1");
  if (cfg.lo > cfg.hi) throw ScanConfigError("scan range is empty (lo > hi)");
  if (cfg.segment_size < 2) throw ScanConfigError("segment size must be >= 2");
  if (cfg.workers == 0) throw ScanConfigError("need at least one worker");
}

std::string config_digest(const ScanConfig& cfg) {
  // FNV-1a over a canonical rendering of the result-determining fields.
  const std::string canon = config_to_json(cfg).dump();
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScanReport scan(const ScanConfig& cfg) {
  validate(cfg);
  CheckpointState state;
  state.cfg = cfg;
  state.digest = config_digest(cfg);
  if (cfg.checkpoint_path && fs::exists(*cfg.checkpoint_path)) {
    CheckpointState stored = read_checkpoint(*cfg.checkpoint_path);
    if (stored.digest != state.digest) {
      throw CheckpointError(CheckpointError::Kind::Mismatch,
                            "checkpoint " + cfg.checkpoint_path->string() +
                                " belongs to a different scan configuration");
    }
    state.done = std::move(stored.done);
  }
  return run(cfg, std::move(state));
}

std::vector<ExceptionalRecord> find_exceptional(ScanConfig cfg) {
  cfg.collect.histogram = false;
  return scan(cfg).exceptional;
}

ScanConfig read_checkpoint_config(const fs::path& checkpoint) {
  return read_checkpoint(checkpoint).cfg;
}

ScanReport resume(const fs::path& checkpoint, unsigned workers,
                  std::function<void(u64, u64)> on_progress) {
  CheckpointState state = read_checkpoint(checkpoint);
  ScanConfig cfg = state.cfg;
  cfg.workers = workers;
  cfg.on_progress = std::move(on_progress);
  cfg.checkpoint_path = checkpoint;
  return run(cfg, std::move(state));
}

}  // namespace mdep
