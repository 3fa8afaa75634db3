#include "beattycensus/report.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "beattycensus/errors.hpp"

namespace bc::report {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        cells.back() += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  return cells;
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError("malformed census count '" + s + "'");
  return v;
}

}  // namespace

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_census_header(std::ostream& out) { out << kCensusHeader << '\n'; }

void write_census_row(std::ostream& out, const census::CensusRow& row, const CensusMeta& meta) {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", row.wall_time);
  out << row.x << ',' << row.c << ',' << row.a << ',' << row.n << ',' << row.c_star << ','
      << row.a_star << ',' << row.n_star << ',' << csv_cell(meta.alpha) << ',' << csv_cell(meta.beta) << ',' << wall
      << '\n';
  out.flush();
}

std::vector<census::CensusRow> read_census_csv(std::istream& in, const CensusMeta& expected) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<census::CensusRow> rows;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    if (end == std::string::npos) break;  // unterminated line: interrupted write
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCensusHeader) throw UsageError("resume file does not start with the census header");
      header_seen = true;
      continue;
    }
    const auto cells = split_csv(line);
    if (cells.size() != 10) break;
    if (cells[7] != expected.alpha || cells[8] != expected.beta)
      throw UsageError("resume file was written for alpha=" + cells[7] + ", beta=" + cells[8]);
    census::CensusRow row;
    row.x = to_u64(cells[0]);
    row.c = to_u64(cells[1]);
    row.a = to_u64(cells[2]);
    row.n = to_u64(cells[3]);
    row.c_star = to_u64(cells[4]);
    row.a_star = to_u64(cells[5]);
    row.n_star = to_u64(cells[6]);
    row.wall_time = std::stod(cells[9]);
    if (!rows.empty() && row.x <= rows.back().x)
      throw UsageError("resume file checkpoints are not increasing");
    rows.push_back(row);
  }
  if (!header_seen) throw UsageError("resume file is empty");
  return rows;
}

std::string census_json(std::span<const census::CensusRow> rows, const CensusMeta& meta,
                        const census::RatioReport* ratios,
                        std::span<const census::ComparisonRow> comparison) {
  nlohmann::ordered_json doc;
  doc["alpha"] = meta.alpha;
  doc["beta"] = meta.beta;
  auto& out_rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out_rows.push_back({{"x", r.x},
                        {"c", r.c},
                        {"a", r.a},
                        {"n", r.n},
                        {"c_star", r.c_star},
                        {"a_star", r.a_star},
                        {"n_star", r.n_star},
                        {"wall_s", r.wall_time}});
  }
  if (ratios != nullptr) {
    auto& rr = doc["ratios"] = nlohmann::ordered_json::array();
    for (const auto& r : ratios->rows) {
      rr.push_back({{"x", r.x},
                    {"c_ratio", r.c_ratio},
                    {"a_ratio", r.a_ratio},
                    {"n_ratio", r.n_ratio},
                    {"inv_alpha", r.inv_alpha},
                    {"c_dev", r.c_dev},
                    {"a_dev", r.a_dev},
                    {"n_dev", r.n_dev}});
    }
    doc["excluded"] = ratios->excluded;
    doc["converging"] = {{"c", ratios->c_converging},
                         {"a", ratios->a_converging},
                         {"n", ratios->n_converging}};
  }
  if (!comparison.empty()) {
    auto& cr = doc["comparison"] = nlohmann::ordered_json::array();
    for (const auto& r : comparison) {
      cr.push_back({{"class", r.class_name},
                    {"count", r.count},
                    {"prediction", r.prediction},
                    {"ratio", r.ratio},
                    {"full_count", r.full_count},
                    {"full_prediction", r.full_prediction},
                    {"full_ratio", r.full_ratio}});
    }
  }
  return doc.dump(2);
}

void write_ratio_csv(std::ostream& out, const census::RatioReport& report) {
  out << "x,c_ratio,a_ratio,n_ratio,inv_alpha,c_dev,a_dev,n_dev\n";
  for (const auto& r : report.rows) {
    out << r.x << ',' << format_real(r.c_ratio) << ',' << format_real(r.a_ratio) << ','
        << format_real(r.n_ratio) << ',' << format_real(r.inv_alpha) << ',' << format_real(r.c_dev)
        << ',' << format_real(r.a_dev) << ',' << format_real(r.n_dev) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, std::uint64_t x,
                          std::span<const census::ComparisonRow> rows) {
  out << "x,class,count,prediction,ratio,full_count,full_prediction,full_ratio\n";
  for (const auto& r : rows) {
    out << x << ',' << r.class_name << ',' << r.count << ',' << format_real(r.prediction) << ','
        << format_real(r.ratio) << ',' << r.full_count << ',' << format_real(r.full_prediction)
        << ',' << format_real(r.full_ratio) << '\n';
  }
}

CsvWriter::CsvWriter(std::ostream& out, std::span<const std::string> header)
    : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(std::span<const std::string> cells) {
  if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_cell(cells[i]);
  }
  out_ << '\n';
}

}  // namespace bc::report
