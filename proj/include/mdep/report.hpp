#pragma once

// JSON and CSV renderings shared by the CLI and the scanner.
//
// Integers above 2^53 are written as JSON strings so that consumers parsing
// numbers as doubles do not lose precision.

#include <nlohmann/json.hpp>
#include <string>

#include "mdep/mset.hpp"
#include "mdep/pillai.hpp"
#include "mdep/scan.hpp"

namespace mdep::report {

using json = nlohmann::json;

inline constexpr u64 kJsonSafeInteger = u64{1} << 53;

json integer(u64 v);
json integer(i64 v);

json to_json(const PrimitiveSolution& s);

/// d is reported with its sign; pairs are swapped when d < 0.
json to_json(const MSetResult& r, bool negative_d, bool with_pairs);

/// Keys: range, histogram (sorted [{m_value, count}]), exceptional
/// ([{d, kind, m_value, solutions}]), audit, segments, complete and, when
/// include_timing, elapsed_seconds.
json to_json(const ScanReport& r, bool include_timing = true);

/// `m_value,count` lines under a header.
std::string histogram_csv(const ScanReport& r);
/// `d,kind,g,x,y,sign`, one line per solution.
std::string exceptional_csv(const ScanReport& r);

}  // namespace mdep::report
