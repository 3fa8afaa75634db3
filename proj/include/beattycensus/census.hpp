#pragma once

// Exact counts of cyclic / abelian / nilpotent numbers up to x, overall and
// restricted to a Beatty sequence, over a segmented sieve.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beattycensus/alpha.hpp"
#include "beattycensus/analytic.hpp"

namespace bc::census {

struct CensusRow {
  std::uint64_t x = 0;
  std::uint64_t c = 0, a = 0, n = 0;
  std::uint64_t c_star = 0, a_star = 0, n_star = 0;
  double wall_time = 0.0;  // seconds since the run started

  bool same_counts(const CensusRow& o) const {
    return x == o.x && c == o.c && a == o.a && n == o.n && c_star == o.c_star &&
           a_star == o.a_star && n_star == o.n_star;
  }
};

struct CensusConfig {
  std::uint64_t x_max = 0;
  std::vector<std::uint64_t> checkpoints;  // ascending, each <= x_max; empty means {x_max}
  BeattyParams params;
  std::uint64_t segment_size = std::uint64_t{1} << 16;
  unsigned worker_count = 1;
};

inline constexpr std::uint64_t kMinSegmentSize = 10'000;
inline constexpr std::uint64_t kMaxCensusX = std::uint64_t{1} << 62;

/// Called after every completed checkpoint, in order.
using RowCallback = std::function<void(const CensusRow&)>;

/// Counts at every checkpoint. When `resume` is given, counting continues after
/// resume->x with its counts as the starting totals (it must be one of the
/// checkpoints); rows up to and including it are not recomputed or re-emitted.
std::vector<CensusRow> run_census(const CensusConfig& config, const RowCallback& on_row = {},
                                  const std::optional<CensusRow>& resume = std::nullopt);

/// Default checkpoints: 10^5, 10^6, ... up to x_max, plus x_max itself.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t x_max);

struct RatioRow {
  std::uint64_t x = 0;
  double c_ratio = 0, a_ratio = 0, n_ratio = 0;  // starred / unstarred
  double inv_alpha = 0;
  double c_dev = 0, a_dev = 0, n_dev = 0;        // |ratio - 1/alpha|
};

struct RatioReport {
  std::vector<RatioRow> rows;
  std::vector<std::uint64_t> excluded;  // checkpoints with a zero unstarred count
  // Last usable row's deviation <= first usable row's, per class.
  bool c_converging = false, a_converging = false, n_converging = false;
};

RatioReport ratio_report(std::span<const CensusRow> rows, const AlphaValue& alpha);

struct ComparisonRow {
  std::string class_name;
  std::uint64_t count = 0;         // Beatty-restricted difference count
  double prediction = 0;           // truncated expansion divided by alpha
  double ratio = 0;
  std::uint64_t full_count = 0;    // unrestricted count
  double full_prediction = 0;
  double full_ratio = 0;
};

/// Compares the counts in `row` with the truncated asymptotic expansions of order
/// `order` for C, A - C and N - A. Throws UsageError if `order` exceeds the number
/// of printed coefficients for any compared class.
std::vector<ComparisonRow> theorem_comparison(const CensusRow& row, int order, double alpha,
                                              std::span<const analytic::SeriesClass> classes = {});

}  // namespace bc::census
