// mdep: multiplicatively dependent pairs, Pillai-type equations and range
// scans from the command line.
//
// Exit codes: 0 success, 2 usage error, 3 domain rejection, 4 checkpoint
// error, 5 I/O failure. Results go to stdout, diagnostics to stderr.

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "mdep/errors.hpp"
#include "mdep/mset.hpp"
#include "mdep/multdep.hpp"
#include "mdep/pillai.hpp"
#include "mdep/report.hpp"
#include "mdep/scan.hpp"

namespace {

using namespace mdep;
using report::json;

enum Exit : int { kOk = 0, kUsage = 2, kDomain = 3, kCheckpoint = 4, kIo = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

i64 parse_i64(const std::string& s) {
  i64 v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("not an integer: " + s);
  return v;
}

u64 parse_u64(const std::string& s) {
  u64 v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("not a non-negative integer: " + s);
  return v;
}

std::vector<i64> parse_entries(const std::vector<std::string>& raw) {
  std::vector<i64> out;
  for (const auto& s : raw) out.push_back(parse_i64(s));
  return out;
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("MDEP_MAX_WORKERS")) {
    const u64 c = parse_u64(cap);
    if (c >= 1 && c < n) n = static_cast<unsigned>(c);
  }
  return n;
}

std::string pow_str(u64 g, unsigned k) { return std::to_string(g) + "^" + std::to_string(k); }

std::string triple(const PrimitiveSolution& s) {
  return "(" + std::to_string(s.g) + "," + std::to_string(s.x) + "," + std::to_string(s.y) + ")";
}

// --- md -------------------------------------------------------------------

struct MdArgs {
  std::string d;
  bool set = false;
  std::string format = "human";
};

int cmd_md(const MdArgs& args) {
  const i64 signed_d = parse_i64(args.d);
  if (signed_d == 0) {
    throw DomainError("d = 0: the set of dependent pairs (a, a) is infinite");
  }
  const bool negative = signed_d < 0;
  const u64 d = negative ? u64{0} - static_cast<u64>(signed_d) : static_cast<u64>(signed_d);
  const MSetResult r = build_set(d);
  const auto closed = closed_form(d);

  if (args.format == "json") {
    json j = report::to_json(r, negative, args.set);
    j["closed_form"] = closed ? json(std::string(describe(closed->shape))) : json(nullptr);
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  if (args.format == "csv") {
    if (args.set) {
      std::cout << "a,b\n";
      for (const auto& p : r.pairs) {
        if (negative) {
          std::cout << p.b << ',' << p.a << '\n';
        } else {
          std::cout << p.a << ',' << p.b << '\n';
        }
      }
    } else {
      std::cout << "d,m_value,n_plus,n_minus\n"
                << signed_d << ',' << r.m_value << ',' << r.n_plus << ',' << r.n_minus << '\n';
    }
    return kOk;
  }

  std::cout << "M(" << d << ")=" << r.m_value;
  if (closed) std::cout << " (closed form: " << describe(closed->shape) << ")";
  std::cout << '\n';
  if (negative) {
    std::cout << "d=" << signed_d << ": M(" << signed_d << ") = M(" << d
              << "), pairs listed with coordinates swapped\n";
  }
  std::cout << "N+(" << d << ")=" << r.n_plus << " N-(" << d << ")=" << r.n_minus << '\n';
  if (args.set) {
    for (const auto& p : r.pairs) {
      const i64 a = negative ? p.b : p.a, b = negative ? p.a : p.b;
      std::cout << "(" << a << "," << b << ")\n";
    }
  }
  return kOk;
}

// --- pillai ---------------------------------------------------------------

struct PillaiArgs {
  std::string d;
  std::string sign = "both";
  std::string format = "human";
};

int cmd_pillai(const PillaiArgs& args) {
  const u64 d = parse_u64(args.d);
  if (d == 0) throw DomainError("d = 0: Pillai equations need d >= 1");
  std::vector<PrimitiveSolution> sols;
  if (args.sign != "minus") {
    auto p = solve_plus(d);
    sols.insert(sols.end(), p.begin(), p.end());
  }
  if (args.sign != "plus") {
    auto m = solve_minus(d);
    sols.insert(sols.end(), m.begin(), m.end());
  }

  if (args.format == "json") {
    json j;
    j["d"] = report::integer(d);
    j["solutions"] = json::array();
    for (const auto& s : sols) {
      json js = report::to_json(s);
      js["verified"] = satisfies(s, d);
      j["solutions"].push_back(js);
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  if (args.format == "csv") {
    std::cout << "d,g,x,y,sign,verified\n";
    for (const auto& s : sols) {
      std::cout << d << ',' << s.g << ',' << s.x << ',' << s.y << ',' << to_string(s.sign)
                << ',' << (satisfies(s, d) ? "true" : "false") << '\n';
    }
    return kOk;
  }
  if (sols.empty()) {
    std::cout << "none\n";
    return kOk;
  }
  for (const auto& s : sols) {
    std::cout << to_string(s.sign) << ' ' << triple(s) << "  " << pow_str(s.g, s.y)
              << (s.sign == Sign::Plus ? " + " : " - ") << pow_str(s.g, s.x) << " = " << d
              << (satisfies(s, d) ? "  ok" : "  FAILED") << '\n';
  }
  return kOk;
}

// --- deptest --------------------------------------------------------------

struct DeptestArgs {
  std::vector<std::string> entries;
  bool witness = false;
  std::string format = "human";
};

int cmd_deptest(const DeptestArgs& args) {
  const auto tuple = parse_entries(args.entries);
  if (tuple.size() < 2) throw UsageError("deptest needs at least two integers");
  const auto w = witness(tuple);
  const bool dep = w.has_value();
  if (args.format == "json") {
    json j;
    j["entries"] = json::array();
    for (i64 z : tuple) j["entries"].push_back(report::integer(z));
    j["dependent"] = dep;
    if (args.witness) {
      j["witness"] = dep ? json(w->exponents) : json(nullptr);
      j["verified"] = dep && verify_witness(tuple, *w);
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << (dep ? "dependent" : "independent") << '\n';
  if (args.witness && dep) {
    std::cout << "witness:";
    for (i64 k : w->exponents) std::cout << ' ' << k;
    std::cout << (verify_witness(tuple, *w) ? "  (verified)" : "  (verification FAILED)")
              << '\n';
  }
  return kOk;
}

// --- translations ---------------------------------------------------------

struct TranslationsArgs {
  std::vector<std::string> entries;
  std::vector<std::string> window;
  unsigned workers = 0;
  std::string format = "human";
};

int cmd_translations(const TranslationsArgs& args) {
  const auto tuple = parse_entries(args.entries);
  if (tuple.size() < 2) throw UsageError("translations needs at least two integers");
  std::vector<i64> ts;
  bool bounded = false;
  i64 lo = -1'000'000, hi = 1'000'000;
  if (tuple.size() == 2 && args.window.empty()) {
    ts = translations_pair(tuple[0], tuple[1]);
  } else {
    if (!args.window.empty()) {
      lo = parse_i64(args.window.at(0));
      hi = parse_i64(args.window.at(1));
    }
    bounded = true;
    ts = translations_search(tuple, lo, hi, worker_count(args.workers));
  }

  if (args.format == "json") {
    json j;
    j["entries"] = json::array();
    for (i64 z : tuple) j["entries"].push_back(report::integer(z));
    j["window_bounded"] = bounded;
    if (bounded) j["window"] = {lo, hi};
    j["translations"] = json::array();
    for (i64 t : ts) j["translations"].push_back(report::integer(t));
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  if (args.format == "csv") {
    std::cout << "t\n";
    for (i64 t : ts) std::cout << t << '\n';
    return kOk;
  }
  if (bounded) {
    std::cout << "window-bounded: searched t in [" << lo << ", " << hi
              << "] only; values outside the window are not covered\n";
  }
  std::cout << ts.size() << " value" << (ts.size() == 1 ? "" : "s") << ":";
  for (i64 t : ts) std::cout << ' ' << t;
  std::cout << '\n';
  return kOk;
}

// --- scan / resume --------------------------------------------------------

struct ScanArgs {
  std::string lo = "2";
  std::string hi;
  u64 segment = u64{1} << 15;
  unsigned workers = 0;
  std::string checkpoint;
  std::vector<std::string> find{"hist"};
  std::string format = "human";
  std::string output;
  bool include_odd = false;
  bool no_timing = false;
  u64 stop_after = 0;
  bool quiet = false;
};

CollectFlags parse_find(const std::vector<std::string>& tokens) {
  CollectFlags c;
  c.histogram = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t == "hist") {
      c.histogram = true;
    } else if (t == "nplus2") {
      c.nplus2 = true;
    } else if (t == "nminus2") {
      c.nminus2 = true;
    } else if (t == "mge") {
      if (i + 1 >= tokens.size()) throw UsageError("--find mge needs a threshold");
      c.m_threshold = parse_u64(tokens[++i]);
    } else {
      throw UsageError("unknown --find kind: " + t);
    }
  }
  return c;
}

std::string render(const ScanReport& r, const std::string& format, bool timing) {
  if (format == "json") return report::to_json(r, timing).dump(2) + "\n";
  if (format == "csv") {
    std::string out;
    if (!r.histogram.empty()) out += report::histogram_csv(r);
    if (!r.exceptional.empty()) {
      if (!out.empty()) out += "\n";
      out += report::exceptional_csv(r);
    }
    return out;
  }
  std::ostringstream os;
  os << "range [" << r.lo << ", " << r.hi << "]" << (r.include_odd ? "" : ", even d only")
     << (r.complete ? "" : " (INCOMPLETE)") << '\n';
  os << "segments " << r.segments_done << "/" << r.segments_total << ", " << r.numbers_scanned
     << " values of d\n";
  if (!r.histogram.empty()) {
    os << "M(d)\tcount\n";
    for (const auto& [m, c] : r.histogram) os << m << '\t' << c << '\n';
  }
  for (const auto& rec : r.exceptional) {
    os << rec.d << "  " << to_string(rec.kind) << "  M=" << rec.m_value << " ";
    for (const auto& s : rec.solutions) os << ' ' << to_string(s.sign) << triple(s);
    os << '\n';
  }
  const auto unexpected = r.unexpected_m_values();
  for (auto m : unexpected) os << "FLAG: unexpected M(d) value " << m << '\n';
  for (auto d : r.audit.bound_violations) os << "FLAG: upper bound violated at d=" << d << '\n';
  for (auto d : r.audit.conjecture_violations) {
    os << "FLAG: N+/N- > 2 or M > 13 at d=" << d << '\n';
  }
  if (timing) os << "elapsed " << r.elapsed_seconds << " s\n";
  return os.str();
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + output);
}

std::function<void(u64, u64)> progress_printer(bool quiet) {
  if (quiet) return {};
  return [](u64 done, u64 total) {
    std::cerr << "\rsegments " << done << "/" << total << std::flush;
    if (done == total) std::cerr << '\n';
  };
}

int cmd_scan(const ScanArgs& args) {
  if (args.hi.empty()) throw UsageError("--hi is required");
  ScanConfig cfg;
  cfg.lo = parse_u64(args.lo);
  cfg.hi = parse_u64(args.hi);
  cfg.segment_size = args.segment;
  cfg.workers = worker_count(args.workers);
  cfg.collect = parse_find(args.find);
  cfg.include_odd = args.include_odd;
  if (!args.checkpoint.empty()) cfg.checkpoint_path = args.checkpoint;
  if (args.stop_after != 0) cfg.stop_after_segments = args.stop_after;
  cfg.on_progress = progress_printer(args.quiet);
  const ScanReport r = scan(cfg);
  emit(render(r, args.format, !args.no_timing), args.output);
  return kOk;
}

struct ResumeArgs {
  std::string checkpoint;
  unsigned workers = 0;
  std::string format = "human";
  std::string output;
  bool no_timing = false;
  bool quiet = false;
};

int cmd_resume(const ResumeArgs& args) {
  const ScanReport r =
      resume(args.checkpoint, worker_count(args.workers), progress_printer(args.quiet));
  emit(render(r, args.format, !args.no_timing), args.output);
  return kOk;
}

void add_format(CLI::App* cmd, std::string& target) {
  cmd->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicatively dependent integer pairs and Pillai-type equations"};
  app.require_subcommand(1);

  MdArgs md;
  auto* md_cmd = app.add_subcommand("md", "M(d) and the set of dependent pairs with difference d");
  md_cmd->add_option("d", md.d, "Nonzero difference (negative allowed)")->required();
  md_cmd->add_flag("--set", md.set, "List every pair");
  add_format(md_cmd, md.format);

  PillaiArgs pa;
  auto* pa_cmd = app.add_subcommand("pillai", "Primitive solutions of g^y +/- g^x = d");
  pa_cmd->add_option("d", pa.d, "d >= 1")->required();
  pa_cmd->add_option("--sign", pa.sign)->check(CLI::IsMember({"plus", "minus", "both"}));
  add_format(pa_cmd, pa.format);

  DeptestArgs dt;
  auto* dt_cmd = app.add_subcommand("deptest", "Test a tuple of nonzero integers for dependence");
  dt_cmd->add_option("entries", dt.entries, "At least two nonzero integers")->required();
  dt_cmd->add_flag("--witness", dt.witness, "Print a verified exponent vector");
  add_format(dt_cmd, dt.format);

  TranslationsArgs tr;
  auto* tr_cmd = app.add_subcommand("translations", "Integers t making (a_i + t) dependent");
  tr_cmd->add_option("entries", tr.entries, "Pairwise distinct integers")->required();
  tr_cmd->add_option("--window", tr.window, "LO HI search window (default -1e6 1e6)")
      ->expected(2);
  tr_cmd->add_option("--workers", tr.workers);
  add_format(tr_cmd, tr.format);

  ScanArgs sc;
  auto* sc_cmd = app.add_subcommand("scan", "Compute M(d) over a range of d");
  sc_cmd->add_option("--lo", sc.lo, "First d (default 2)");
  sc_cmd->add_option("--hi", sc.hi, "Last d")->required();
  sc_cmd->add_option("--segment", sc.segment, "Numbers per segment");
  sc_cmd->add_option("--workers", sc.workers, "Worker threads (MDEP_MAX_WORKERS caps this)");
  sc_cmd->add_option("--checkpoint", sc.checkpoint, "Checkpoint file (created or continued)");
  sc_cmd->add_option("--find", sc.find, "hist | nplus2 | nminus2 | mge N (repeatable)")
      ->expected(1, -1);
  sc_cmd->add_option("--output", sc.output, "Write the report here instead of stdout");
  sc_cmd->add_flag("--include-odd", sc.include_odd, "Also count odd d (M = 4)");
  sc_cmd->add_flag("--no-timing", sc.no_timing, "Omit elapsed time from the report");
  sc_cmd->add_option("--stop-after", sc.stop_after, "Stop after N segments (testing)");
  sc_cmd->add_flag("--quiet", sc.quiet, "No progress on stderr");
  add_format(sc_cmd, sc.format);

  ResumeArgs rs;
  auto* rs_cmd = app.add_subcommand("resume", "Finish a scan from its checkpoint");
  rs_cmd->add_option("checkpoint", rs.checkpoint)->required();
  rs_cmd->add_option("--workers", rs.workers);
  rs_cmd->add_option("--output", rs.output);
  rs_cmd->add_flag("--no-timing", rs.no_timing);
  rs_cmd->add_flag("--quiet", rs.quiet);
  add_format(rs_cmd, rs.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (md_cmd->parsed()) return cmd_md(md);
    if (pa_cmd->parsed()) return cmd_pillai(pa);
    if (dt_cmd->parsed()) return cmd_deptest(dt);
    if (tr_cmd->parsed()) return cmd_translations(tr);
    if (sc_cmd->parsed()) return cmd_scan(sc);
    if (rs_cmd->parsed()) return cmd_resume(rs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ScanConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return e.kind() == CheckpointError::Kind::Io ? kIo : kCheckpoint;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
