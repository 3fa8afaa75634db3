#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "beattycensus/errors.hpp"
#include "beattycensus/report.hpp"

using namespace bc;
using namespace bc::report;

namespace {

census::CensusRow sample(std::uint64_t x) {
  return {.x = x, .c = x / 3, .a = x / 3 + 5, .n = x / 3 + 9,
          .c_star = x / 5, .a_star = x / 5 + 2, .n_star = x / 5 + 4, .wall_time = 1.25};
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("census CSV layout") {
  std::ostringstream out;
  write_census_header(out);
  write_census_row(out, sample(1000), {"sqrt:2", "1/2"});
  CHECK(out.str() == "x,c,a,n,c_star,a_star,n_star,alpha,beta,wall_s\n"
                     "1000,333,338,342,200,202,204,sqrt:2,1/2,1.250\n");
}

TEST_CASE("census CSV round trip") {
  const CensusMeta meta{"quad:1,1,2,5", "-1/3"};
  std::ostringstream out;
  write_census_header(out);
  for (std::uint64_t x : {100'000ULL, 1'000'000ULL}) write_census_row(out, sample(x), meta);
  std::istringstream in(out.str());
  const auto rows = read_census_csv(in, meta);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].same_counts(sample(100'000)));
  CHECK(rows[1].same_counts(sample(1'000'000)));
}

TEST_CASE("labels with commas are quoted") {
  CHECK(csv_cell("sqrt:2") == "sqrt:2");
  CHECK(csv_cell("quad:1,1,2,5") == "\"quad:1,1,2,5\"");
  CHECK(csv_cell("a\"b") == "\"a\"\"b\"");
  std::ostringstream out;
  write_census_row(out, sample(10), {"quad:1,1,2,5", "-1/3"});
  CHECK(out.str() == "10,3,8,12,2,4,6,\"quad:1,1,2,5\",-1/3,1.250\n");
}

TEST_CASE("interrupted files keep only complete rows") {
  const CensusMeta meta{"sqrt:2", "0"};
  std::ostringstream out;
  write_census_header(out);
  write_census_row(out, sample(100'000), meta);
  std::string text = out.str() + "1000000,3333";
  std::istringstream in(text);
  const auto rows = read_census_csv(in, meta);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].x == 100'000);
}

TEST_CASE("resume files are validated") {
  std::ostringstream out;
  write_census_header(out);
  write_census_row(out, sample(100), {"sqrt:3", "0"});
  {
    std::istringstream in(out.str());
    CHECK_THROWS_AS(read_census_csv(in, {"sqrt:2", "0"}), UsageError);
  }
  {
    std::istringstream in("x,y\n1,2\n");
    CHECK_THROWS_AS(read_census_csv(in, {"sqrt:2", "0"}), UsageError);
  }
  {
    std::istringstream in("");
    CHECK_THROWS_AS(read_census_csv(in, {"sqrt:2", "0"}), UsageError);
  }
  {
    std::ostringstream twice;
    write_census_header(twice);
    write_census_row(twice, sample(200), {"sqrt:2", "0"});
    write_census_row(twice, sample(100), {"sqrt:2", "0"});
    std::istringstream in(twice.str());
    CHECK_THROWS_AS(read_census_csv(in, {"sqrt:2", "0"}), UsageError);
  }
}

TEST_CASE("JSON mirror carries the same fields") {
  const std::vector<census::CensusRow> rows{sample(100'000), sample(1'000'000)};
  const auto report = census::ratio_report(rows, AlphaValue::sqrt(2));
  const auto cmp = census::theorem_comparison(sample(100'000'000), 1, std::sqrt(2.0));
  const auto doc = nlohmann::json::parse(census_json(rows, {"sqrt:2", "0"}, &report, cmp));
  CHECK(doc["alpha"] == "sqrt:2");
  CHECK(doc["beta"] == "0");
  REQUIRE(doc["rows"].size() == 2);
  for (const char* key : {"x", "c", "a", "n", "c_star", "a_star", "n_star", "wall_s"})
    CHECK(doc["rows"][0].contains(key));
  CHECK(doc["rows"][1]["n_star"] == sample(1'000'000).n_star);
  CHECK(doc["ratios"].size() == 2);
  CHECK(doc["comparison"].size() == 3);
  CHECK(doc["comparison"][0]["class"] == "cyclic");

  const auto bare = nlohmann::json::parse(census_json(rows, {"sqrt:2", "0"}, nullptr, {}));
  CHECK_FALSE(bare.contains("ratios"));
  CHECK_FALSE(bare.contains("comparison"));
}

TEST_CASE("ratio and comparison tables") {
  const std::vector<census::CensusRow> rows{sample(100'000)};
  std::ostringstream out;
  write_ratio_csv(out, census::ratio_report(rows, AlphaValue::sqrt(2)));
  CHECK(out.str().rfind("x,c_ratio,a_ratio,n_ratio,inv_alpha,c_dev,a_dev,n_dev\n100000,", 0) == 0);
  std::ostringstream cmp;
  write_comparison_csv(cmp, 100'000'000, census::theorem_comparison(sample(100'000'000), 0, 1.5));
  CHECK(cmp.str().find("\n100000000,nilpotent-minus-abelian,") != std::string::npos);
}

TEST_CASE("CSV writer and number formatting") {
  std::ostringstream out;
  const std::vector<std::string> header{"a", "b"};
  CsvWriter w(out, header);
  w.row(std::vector<std::string>{"1", "2"});
  CHECK(out.str() == "a,b\n1,2\n");
  CHECK_THROWS(w.row(std::vector<std::string>{"1"}));
  CHECK(format_real(0.1) == "0.1");
  CHECK(std::stod(format_real(1 / 3.0)) == 1 / 3.0);
}

}
