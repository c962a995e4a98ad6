#pragma once

// Parallel, checkpointed computation of M(d) over a range of d.
//
// The range is cut into fixed segments. Each segment is factored with a
// segmented sieve, every d gets its Pillai counts from the unitary divisors,
// and per-segment results are merged in segment order, so the report does not
// depend on the number of workers or on scheduling.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdep/arith.hpp"
#include "mdep/pillai.hpp"

namespace mdep {

struct CollectFlags {
  bool histogram = true;
  bool nplus2 = false;   // N+(d) >= 2
  bool nminus2 = false;  // N-(d) >= 2
  std::optional<std::size_t> m_threshold;  // M(d) >= threshold

  friend bool operator==(const CollectFlags&, const CollectFlags&) = default;
};

struct ScanConfig {
  u64 lo = 2;
  u64 hi = 2;
  u64 segment_size = u64{1} << 15;
  unsigned workers = 1;
  CollectFlags collect;
  bool include_odd = false;
  std::optional<std::filesystem::path> checkpoint_path;
  // Stop after this many segments have been claimed in this run. Used to
  // simulate an interrupted scan.
  std::optional<u64> stop_after_segments;
  // Called from the coordinating thread as segments complete.
  std::function<void(u64 done, u64 total)> on_progress;
};

enum class ExceptionalKind { NPlus2, NMinus2, MAtLeast };

std::string_view to_string(ExceptionalKind k);
std::optional<ExceptionalKind> parse_exceptional_kind(std::string_view s);

struct ExceptionalRecord {
  u64 d = 0;
  ExceptionalKind kind = ExceptionalKind::NPlus2;
  std::size_t m_value = 0;
  std::vector<PrimitiveSolution> solutions;

  friend bool operator==(const ExceptionalRecord&,
                         const ExceptionalRecord&) = default;
};

struct ScanAudit {
  // Even d with m >= 3 distinct primes and M(d) above 2^{m+1} + 1 (or the
  // squarefree refinement). The bound is proven, so this list stays empty.
  std::vector<u64> bound_violations;
  // d with N+(d) > 2, N-(d) > 2 or M(d) > 13.
  std::vector<u64> conjecture_violations;

  friend bool operator==(const ScanAudit&, const ScanAudit&) = default;
};

struct ScanReport {
  u64 lo = 0;
  u64 hi = 0;
  bool include_odd = false;
  std::map<std::size_t, u64> histogram;
  std::vector<ExceptionalRecord> exceptional;
  ScanAudit audit;
  u64 numbers_scanned = 0;
  u64 segments_done = 0;
  u64 segments_total = 0;
  bool complete = false;
  double elapsed_seconds = 0.0;

  /// Histogram keys outside {5, 7, 9, 11, 13} (plus {2, 4} with odd d).
  std::vector<std::size_t> unexpected_m_values() const;
};

class ScanConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { Missing, Corrupt, Mismatch, Io };
  CheckpointError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Throws ScanConfigError for lo == 0, lo > hi, segment_size < 2 or
/// workers == 0.
void validate(const ScanConfig& cfg);

/// Stable digest of the fields that determine the result (range, segment
/// size, collection flags, odd handling).
std::string config_digest(const ScanConfig& cfg);

/// Runs the scan. With a checkpoint path, an existing checkpoint for the
/// same configuration is continued; one for a different configuration is a
/// CheckpointError::Mismatch.
ScanReport scan(const ScanConfig& cfg);

/// Scan with only the exceptional collectors active; returns the records.
std::vector<ExceptionalRecord> find_exceptional(ScanConfig cfg);

/// Continues the scan stored in a checkpoint file. Missing file, corrupt file
/// and digest mismatch raise distinct CheckpointError kinds.
ScanReport resume(const std::filesystem::path& checkpoint, unsigned workers = 1,
                  std::function<void(u64, u64)> on_progress = {});

/// Reads the configuration recorded in a checkpoint.
ScanConfig read_checkpoint_config(const std::filesystem::path& checkpoint);

}  // namespace mdep
