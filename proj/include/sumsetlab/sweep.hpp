#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/report.hpp"

namespace sumsetlab {

enum class SampleMode { exhaustive, random };

/// Integer sets A ⊆ [0, n_max] with k_min <= |A| <= k_max in canonical form
/// (min 0, gcd 1). raw = true enumerates every subset instead; theorems that
/// need a normalized set then check its normal form.
struct NormalizedSetsFamily {
  Int n_max = 12;
  std::size_t k_min = 3;
  std::size_t k_max = 7;
  bool raw = false;
};

/// Every non-empty A ⊆ [0, N-1] for n_min <= N <= n_max, paired with N.
struct IntervalSubsetsFamily {
  Int n_min = 2;
  Int n_max = 12;
};

/// Pairs A, B ⊆ [0, n_max] with min A = min B = 0 (translation covers the rest).
struct SetPairsFamily {
  Int n_max = 6;
};

/// All pairs of non-empty subsets of Z/pZ.
struct ResiduePairsFamily {
  Int p = 7;
};

/// Point sets of Z x G whose first projection is a canonical set in
/// [0, a_max]. Exhaustive mode enumerates G^k for every projection with
/// |G|^k <= exhaustive_limit and draws `count` seeded random instances over
/// the remaining projections; random mode draws `count` instances over all.
struct ProductSetsFamily {
  GroupPtr inner;
  Int a_max = 8;
  std::size_t k_min = 3;
  std::size_t k_max = 5;
  SampleMode mode = SampleMode::exhaustive;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t exhaustive_limit = 1'000'000;
};

/// Subsets of an ordered group with every coordinate in [-radius, radius].
struct BoxSubsetsFamily {
  GroupPtr group;
  Int radius = 1;
  std::size_t k_min = 3;
  std::size_t k_max = 3;
  SampleMode mode = SampleMode::exhaustive;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> seed;
};

using SweepFamily = std::variant<NormalizedSetsFamily, IntervalSubsetsFamily, SetPairsFamily, ResiduePairsFamily,
                                 ProductSetsFamily, BoxSubsetsFamily>;

nlohmann::json to_json(const SweepFamily& family);

struct SweepProgress {
  std::uint64_t done = 0;
  std::uint64_t planned = 0;
  std::uint64_t counterexamples = 0;
};

struct SweepSpec {
  TheoremId theorem = TheoremId::thm_A_3k4;
  SweepFamily family;
  /// 0 picks SUMSETLAB_WORKERS, then the hardware concurrency.
  unsigned workers = 0;
  /// 0 means no limit. A family larger than the limit yields an incomplete
  /// report.
  std::uint64_t max_instances = 0;
  std::optional<std::chrono::milliseconds> time_limit;
  /// Called from worker threads (serialized) after each finished chunk.
  std::function<void(const SweepProgress&)> on_progress;
};

struct SweepCounts {
  std::uint64_t instances = 0;
  std::uint64_t hypothesis_met = 0;
  std::uint64_t holds = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t counterexamples = 0;
  std::uint64_t window_literal = 0;
  std::uint64_t window_relaxed = 0;
  std::uint64_t window_neither = 0;
  std::uint64_t cross_checked = 0;
  std::uint64_t cross_check_failures = 0;
  /// Hypothesis-met thm_1 instances where b != R-2.
  std::uint64_t b_r_mismatches = 0;

  SweepCounts& operator+=(const SweepCounts& o);
  friend bool operator==(const SweepCounts&, const SweepCounts&) = default;
};

struct IndexedReport {
  std::uint64_t index = 0;
  VerificationReport report;
};

struct SweepReport {
  TheoremId theorem = TheoremId::thm_A_3k4;
  nlohmann::json family;
  std::optional<std::uint64_t> seed;
  std::uint64_t planned_instances = 0;
  bool complete = true;
  SweepCounts counts;
  /// Sorted by instance index.
  std::vector<IndexedReport> counterexamples;
  unsigned workers = 1;
  std::chrono::nanoseconds wall_time{0};

  bool ok() const { return complete && counts.counterexamples == 0; }
  /// Timing fields (wall time, worker count, timestamp) sit under "timing" and
  /// are left out when include_timing is false.
  nlohmann::json to_json(bool include_timing = true) const;
  std::string to_csv(bool include_timing = true) const;
};

unsigned default_workers();

/// Number of instances the family enumerates for the theorem.
std::uint64_t planned_instances(const SweepSpec& spec);

SweepReport run_sweep(const SweepSpec& spec);

}  // namespace sumsetlab
