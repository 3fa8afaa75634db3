#pragma once

// CSV and JSON serialization of census rows and diagnostic tables.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "beattycensus/census.hpp"

namespace bc::report {

/// Identifies the Beatty sequence a census file belongs to.
struct CensusMeta {
  std::string alpha;  // AlphaValue::label()
  std::string beta;   // Rational::to_string()
};

inline constexpr const char* kCensusHeader = "x,c,a,n,c_star,a_star,n_star,alpha,beta,wall_s";

/// Quotes a CSV cell when it contains a comma, quote or newline.
std::string csv_cell(const std::string& cell);

/// Shortest decimal that round-trips the double.
std::string format_real(double v);

void write_census_header(std::ostream& out);
void write_census_row(std::ostream& out, const census::CensusRow& row, const CensusMeta& meta);

/// Rows written by write_census_row. Incomplete trailing lines (an interrupted
/// run) are ignored; rows for a different (alpha, beta) are a UsageError.
std::vector<census::CensusRow> read_census_csv(std::istream& in, const CensusMeta& expected);

/// {"alpha", "beta", "rows": [...], "ratios": [...], "comparison": [...]}.
std::string census_json(std::span<const census::CensusRow> rows, const CensusMeta& meta,
                        const census::RatioReport* ratios,
                        std::span<const census::ComparisonRow> comparison);

void write_ratio_csv(std::ostream& out, const census::RatioReport& report);
void write_comparison_csv(std::ostream& out, std::uint64_t x,
                          std::span<const census::ComparisonRow> rows);

/// Minimal CSV emitter: header once, then rows of preformatted cells.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::span<const std::string> header);
  void row(std::span<const std::string> cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace bc::report
