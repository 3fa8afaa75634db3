// beatty-census: command-line front end.
//
//   beatty-census classify N...
//   beatty-census census --alpha sqrt:2 --xmax 1e8 [--checkpoints 1e5,1e6,...]
//   beatty-census beatty {list|contains|nth|cf|type} ...
//   beatty-census asympt --class cyclic --x 1e8 --order 1 [--alpha sqrt:2]
//   beatty-census diagnose {et|vaaler|minsum|divisor|expsum|mertens|rough} ...
//
// Exit status: 0 success, 2 usage error, 3 precision or resource error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beattycensus/analytic.hpp"
#include "beattycensus/arith.hpp"
#include "beattycensus/beatty.hpp"
#include "beattycensus/census.hpp"
#include "beattycensus/errors.hpp"
#include "beattycensus/expsum.hpp"
#include "beattycensus/report.hpp"

namespace {

using namespace bc;
using report::format_real;

constexpr std::array<const char*, 7> kDiagnoseKinds = {"et",      "vaaler",  "minsum", "divisor",
                                                        "expsum",  "mertens", "rough"};

// Accepts plain integers and exact scientific notation such as "1e8" or "2.5e3".
std::uint64_t parse_count(const std::string& text, const char* what) {
  Rational v;
  try {
    v = Rational::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string(what) + ": '" + text + "' is not a number");
  }
  if (v.den() != 1) throw UsageError(std::string(what) + ": '" + text + "' is not an integer");
  if (v.num() < 0) throw UsageError(std::string(what) + ": '" + text + "' is negative");
  return static_cast<std::uint64_t>(v.num());
}

std::int64_t parse_signed(const std::string& text, const char* what) {
  const auto v = parse_count(text, what);
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw UsageError(std::string(what) + " too large");
  return static_cast<std::int64_t>(v);
}

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(what) + ": '" + text + "' is not a real number");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_count_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(text)) out.push_back(parse_count(item, what));
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

unsigned default_workers() {
  const char* env = std::getenv("BEATTY_CENSUS_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  const auto v = parse_count(env, "BEATTY_CENSUS_THREADS");
  if (v < 1 || v > 1024) throw UsageError("BEATTY_CENSUS_THREADS must be in [1, 1024]");
  return static_cast<unsigned>(v);
}

// Output goes to a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

BeattyParams make_params(const std::string& alpha, const std::string& beta) {
  return {AlphaValue::parse(alpha), Rational::parse(beta)};
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::vector<std::string> numbers;
};

void run_classify(const ClassifyArgs& args) {
  std::vector<std::uint64_t> ns;
  for (const auto& s : args.numbers) {
    const auto n = parse_count(s, "n");
    if (n < 1) throw UsageError("n must be >= 1");
    ns.push_back(n);
  }
  std::cout << "n,class,is_cyclic,is_abelian,is_nilpotent\n";
  for (auto n : ns) {
    const auto cls = arith::classify(arith::factorize(n));
    std::cout << n << ',' << arith::to_string(cls) << ',' << arith::is_cyclic(cls) << ','
              << arith::is_abelian(cls) << ',' << arith::is_nilpotent(cls) << '\n';
  }
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  std::string alpha;
  std::string beta = "0";
  std::string xmax;
  std::string checkpoints;
  unsigned workers = 0;
  std::string segment = "65536";
  std::string format = "csv";
  std::string output;
  std::string resume;
  std::string report;
  std::string compare;
  int compare_order = 0;
};

void run_census(const CensusArgs& args) {
  census::CensusConfig config{.x_max = parse_count(args.xmax, "--xmax"),
                              .checkpoints = {},
                              .params = make_params(args.alpha, args.beta),
                              .segment_size = parse_count(args.segment, "--segment"),
                              .worker_count = args.workers != 0 ? args.workers : default_workers()};
  config.checkpoints = args.checkpoints.empty() ? census::default_checkpoints(config.x_max)
                                                : parse_count_list(args.checkpoints, "--checkpoints");
  const report::CensusMeta meta{config.params.alpha.label(), config.params.beta.to_string()};

  std::vector<census::CensusRow> rows;
  std::optional<census::CensusRow> resume;
  if (!args.resume.empty()) {
    std::ifstream in(args.resume);
    if (!in) throw UsageError("cannot open resume file '" + args.resume + "'");
    rows = report::read_census_csv(in, meta);
    if (!rows.empty()) resume = rows.back();
  }

  const bool json = args.format == "json";
  Sink sink(args.output);
  if (!json) {
    report::write_census_header(sink.out());
    for (const auto& r : rows) report::write_census_row(sink.out(), r, meta);
  }
  auto fresh = census::run_census(
      config,
      [&](const census::CensusRow& r) {
        if (!json) report::write_census_row(sink.out(), r, meta);
      },
      resume);
  rows.insert(rows.end(), fresh.begin(), fresh.end());

  std::optional<census::RatioReport> ratios;
  if (!args.report.empty() || json) ratios = census::ratio_report(rows, config.params.alpha);
  std::vector<census::ComparisonRow> comparison;
  if (!args.compare.empty() || (json && args.compare_order > 0)) {
    comparison = census::theorem_comparison(rows.back(), args.compare_order,
                                            config.params.alpha.to_double());
  }

  if (json) {
    sink.out() << report::census_json(rows, meta, ratios ? &*ratios : nullptr, comparison) << '\n';
  }
  if (!args.report.empty()) {
    Sink r(args.report);
    report::write_ratio_csv(r.out(), *ratios);
  }
  if (!args.compare.empty()) {
    Sink c(args.compare);
    report::write_comparison_csv(c.out(), rows.back().x, comparison);
  }
}

// ---------------------------------------------------------------- beatty

struct BeattyArgs {
  std::string alpha;
  std::string beta = "0";
  std::string xmax;
  std::vector<std::string> values;
  int terms = 10;
  std::string qmax = "1e6";
};

void run_beatty_list(const BeattyArgs& args) {
  const auto params = make_params(args.alpha, args.beta);
  const auto x = parse_signed(args.xmax, "--xmax");
  std::cout << "index,term\n";
  const auto range = beatty::indices_between(1, x, params);
  for (std::int64_t r = range.first; r <= range.last; ++r)
    std::cout << r << ',' << beatty::nth_term(r, params) << '\n';
}

void run_beatty_contains(const BeattyArgs& args) {
  const auto params = make_params(args.alpha, args.beta);
  std::vector<std::int64_t> ns;
  for (const auto& s : args.values) ns.push_back(parse_signed(s, "n"));
  std::cout << "n,member\n";
  for (auto n : ns) std::cout << n << ',' << beatty::contains(n, params) << '\n';
}

void run_beatty_nth(const BeattyArgs& args) {
  const auto params = make_params(args.alpha, args.beta);
  std::vector<std::int64_t> rs;
  for (const auto& s : args.values) {
    rs.push_back(parse_signed(s, "r"));
    if (rs.back() < 1) throw UsageError("r must be >= 1");
  }
  std::cout << "r,term\n";
  for (auto r : rs) std::cout << r << ',' << beatty::nth_term(r, params) << '\n';
}

void run_beatty_cf(const BeattyArgs& args) {
  const auto alpha = AlphaValue::parse(args.alpha);
  if (args.terms < 0) throw UsageError("--terms must be >= 0");
  const auto cf = beatty::continued_fraction(alpha, args.terms);
  std::cout << "i,a_i,p_i,q_i\n";
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
    std::cout << i << ',' << cf.quotients[i].get_str() << ',' << cf.convergents[i].first.get_str()
              << ',' << cf.convergents[i].second.get_str() << '\n';
  }
}

void run_beatty_type(const BeattyArgs& args) {
  const auto alpha = AlphaValue::parse(args.alpha);
  const auto est = beatty::estimate_type(alpha, parse_signed(args.qmax, "--qmax"));
  std::cout << "q,distance,exponent,tau\n";
  for (const auto& e : est.evidence) {
    std::cout << e.q << ',' << format_real(e.distance) << ',' << format_real(e.exponent) << ','
              << format_real(est.tau) << '\n';
  }
}

// ---------------------------------------------------------------- asympt

struct AsymptArgs {
  std::string cls = "cyclic";
  std::string x;
  int order = 0;
  std::string alpha = "1";
};

void run_asympt(const AsymptArgs& args) {
  const auto cls = analytic::parse_series_class(args.cls);
  const double x = parse_real(args.x, "--x");
  const double alpha = args.alpha == "1" ? 1.0 : AlphaValue::parse(args.alpha).to_double();
  const double prediction = analytic::eval_series(cls, x, args.order, alpha);
  std::cout << "class,x,order,alpha,prefactor,prediction\n"
            << analytic::to_string(cls) << ',' << format_real(x) << ',' << args.order << ','
            << report::csv_cell(args.alpha) << ',' << format_real(analytic::series_prefactor(cls, x, alpha)) << ','
            << format_real(prediction) << '\n';
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseArgs {
  std::string alpha = "sqrt:2";
  std::string beta;
  std::string n_list;
  std::string x;
  int J = 100;
  double rho = 0.0;
  double sigma = 0.5;
  std::string H = "1,4,16,64";
  std::string points = "1e5";
  std::string d_max = "100";
  std::string f = "one";
  std::string j = "1";
  double tau = 1.0;
  double eps = 0.05;
  std::string xmax = "1e6";
  std::string which = "product";
  double y = 30.0;
  std::string predictor = "product";
  std::string mode = "number";
  unsigned workers = 0;
};

const std::vector<std::string> kLemmaHeader = {"j_or_d", "N", "observed", "reference", "flag"};
const std::vector<std::string> kPrimeHeader = {"X", "observed", "predicted", "ratio"};

void run_et(const DiagnoseArgs& args) {
  const auto alpha = AlphaValue::parse(args.alpha);
  const auto omega = alpha.to_double_double();
  report::CsvWriter csv(std::cout, kLemmaHeader);
  for (auto n : parse_count_list(args.n_list.empty() ? "1e4" : args.n_list, "--N")) {
    std::vector<double> u;
    u.reserve(n);
    for (std::uint64_t m = 1; m <= n; ++m)
      u.push_back(expsum::frac_scaled(static_cast<std::int64_t>(m), omega));
    const auto r = expsum::erdos_turan(expsum::UnitSequence::from_reals(u), args.J, args.rho, args.sigma);
    csv.row(std::vector<std::string>{std::to_string(args.J), std::to_string(n), format_real(r.actual_dev),
                                     format_real(r.bound), r.actual_dev <= r.bound ? "ok" : "violated"});
  }
}

void run_vaaler(const DiagnoseArgs& args) {
  const auto points = parse_count(args.points, "--points");
  report::CsvWriter csv(std::cout, std::vector<std::string>{"H", "points", "max_violation",
                                                            "max_a_error", "a_error_limit",
                                                            "max_imag", "min_majorant", "inequality",
                                                            "a_error"});
  for (auto h : parse_count_list(args.H, "--H")) {
    const auto check = expsum::check_vaaler(expsum::vaaler_approx(static_cast<int>(h)), points);
    const double limit = 1.1 / (static_cast<double>(h) + 1.0);
    csv.row(std::vector<std::string>{std::to_string(h), std::to_string(points),
                                     format_real(check.max_violation), format_real(check.max_a_error),
                                     format_real(limit), format_real(check.max_imag),
                                     format_real(check.min_majorant), check.holds ? "pass" : "fail",
                                     check.max_a_error <= limit ? "pass" : "fail"});
  }
}

void run_minsum(const DiagnoseArgs& args) {
  const auto alpha = AlphaValue::parse(args.alpha);
  report::CsvWriter csv(std::cout, kLemmaHeader);
  for (auto n : parse_count_list(args.n_list.empty() ? "1e3,1e4,1e5" : args.n_list, "--N")) {
    const double N = static_cast<double>(n);
    const double x = args.x.empty() ? N : parse_real(args.x, "--x");
    double observed = 0, reference = 0;
    std::string type;
    if (args.beta.empty()) {
      observed = expsum::minsum_type1(alpha, x, static_cast<std::int64_t>(n));
      reference = expsum::minsum_type1_reference(x, N, args.tau, args.eps);
      type = "1";
    } else {
      observed = expsum::minsum_type2(alpha, Rational::parse(args.beta), x, static_cast<std::int64_t>(n));
      reference = expsum::minsum_type2_reference(x, N, args.tau, args.eps);
      type = "2";
    }
    csv.row(std::vector<std::string>{type, std::to_string(n), format_real(observed),
                                     format_real(reference), "ratio=" + format_real(observed / reference)});
  }
}

void run_divisor(const DiagnoseArgs& args) {
  const auto params = make_params(args.alpha, args.beta.empty() ? "0" : args.beta);
  const auto d_max = parse_signed(args.d_max, "--d-max");
  if (d_max < 1) throw UsageError("--d-max must be >= 1");
  report::CsvWriter csv(std::cout, kLemmaHeader);
  for (auto n : parse_count_list(args.n_list.empty() ? "1e4,1e6" : args.n_list, "--N")) {
    const double scale = std::pow(static_cast<double>(n), args.tau / (1.0 + args.tau) + args.eps);
    for (std::int64_t d = 1; d <= d_max; ++d) {
      const auto r = expsum::divisor_beatty_error(d, static_cast<std::int64_t>(n), params);
      csv.row(std::vector<std::string>{std::to_string(d), std::to_string(n), std::to_string(r.count),
                                       format_real(r.main),
                                       std::abs(r.err) <= scale ? "within" : "outside"});
    }
  }
}

void run_expsum(const DiagnoseArgs& args) {
  const auto f = expsum::MultiplicativeSpec::parse(args.f);
  const auto alpha = AlphaValue::parse(args.alpha);
  const auto j = parse_signed(args.j, "--j");
  const auto grid = parse_count_list(args.n_list.empty() ? "1e4,1e5,1e6" : args.n_list, "--N");
  report::CsvWriter csv(std::cout, kLemmaHeader);
  for (const auto& row : expsum::multiplicative_expsum(f, alpha, j, grid, args.tau)) {
    csv.row(std::vector<std::string>{std::to_string(j), std::to_string(row.N), format_real(row.magnitude),
                                     format_real(row.reference), row.in_window ? "in-window" : "outside-window"});
  }
}

void run_mertens(const DiagnoseArgs& args) {
  if (args.which != "sum" && args.which != "product")
    throw UsageError("--which must be 'sum' or 'product'");
  report::CsvWriter csv(std::cout, kPrimeHeader);
  for (auto X : parse_count_list(args.xmax, "--xmax")) {
    const auto r = args.which == "sum" ? analytic::mertens_sum(X) : analytic::mertens_product(X);
    csv.row(std::vector<std::string>{std::to_string(X), format_real(r.observed), format_real(r.predicted),
                                     format_real(r.observed / r.predicted)});
  }
}

void run_rough(const DiagnoseArgs& args) {
  if (args.predictor != "product" && args.predictor != "mertens")
    throw UsageError("--predictor must be 'product' or 'mertens'");
  analytic::RoughOptions options;
  if (args.mode == "number")
    options.mode = analytic::RoughMode::NumberInBeatty;
  else if (args.mode == "prime-factors")
    options.mode = analytic::RoughMode::PrimeFactorsInBeatty;
  else
    throw UsageError("--mode must be 'number' or 'prime-factors'");
  options.worker_count = args.workers != 0 ? args.workers : default_workers();
  const auto params = make_params(args.alpha, args.beta.empty() ? "0" : args.beta);
  const auto x = parse_count(args.x.empty() ? "1e8" : args.x, "--x");
  const auto r = analytic::rough_beatty_count(x, args.y, params, options);
  const double predicted = args.predictor == "product" ? r.product_prediction : r.mertens_prediction;
  report::CsvWriter csv(std::cout, kPrimeHeader);
  csv.row(std::vector<std::string>{std::to_string(x), std::to_string(r.count), format_real(predicted),
                                   format_real(static_cast<double>(r.count) / predicted)});
}

// Expands "--config FILE": every "key = value" line becomes "--key=value" unless
// --key already appears on the command line. Blank lines and '#' comments are skipped.
std::vector<std::string> merge_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  int line_no = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

bool is_diagnose_kind(const std::string& s) {
  for (const char* k : kDiagnoseKinds) {
    if (s == k) return true;
  }
  return false;
}

std::string kind_list() {
  std::string s;
  for (const char* k : kDiagnoseKinds) s += std::string(s.empty() ? "" : ", ") + k;
  return s;
}

int run(int argc, char** argv) {
  // CLI11 would report an unknown diagnostic as a stray argument; name the kinds instead.
  if (argc >= 3 && std::string(argv[1]) == "diagnose" && argv[2][0] != '-' && !is_diagnose_kind(argv[2]))
    throw UsageError("unknown diagnostic '" + std::string(argv[2]) + "' (expected one of " + kind_list() + ")");

  CLI::App app{"Cyclic, abelian and nilpotent numbers in Beatty sequences"};
  app.require_subcommand(1);
  std::function<void()> action;

  auto add_config = [](CLI::App* sub) {
    // Consumed by merge_config before parsing; declared so --help lists it.
    sub->add_option("--config", "Read 'key = value' defaults from a file (flags win)");
  };

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Classify orders as cyclic / abelian / nilpotent");
  c->add_option("n", classify.numbers, "Integers n >= 1")->required();
  c->callback([&] { action = [&] { run_classify(classify); }; });

  CensusArgs cen;
  auto* cs = app.add_subcommand("census", "Count C, A, N and their Beatty restrictions");
  add_config(cs);
  cs->add_option("--alpha", cen.alpha, "sqrt:D | quad:p,q,r,d | e | pi")->required();
  cs->add_option("--beta", cen.beta, "Rational shift");
  cs->add_option("--xmax", cen.xmax, "Upper limit")->required();
  cs->add_option("--checkpoints", cen.checkpoints, "Comma-separated checkpoints");
  cs->add_option("--workers", cen.workers, "Worker threads (default $BEATTY_CENSUS_THREADS or 1)");
  cs->add_option("--segment", cen.segment, "Sieve segment size");
  cs->add_option("--format", cen.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cs->add_option("--output", cen.output, "Output file (default stdout)");
  cs->add_option("--resume", cen.resume, "Continue from a partial census CSV");
  cs->add_option("--report", cen.report, "Write the starred/unstarred ratio table here");
  cs->add_option("--compare", cen.compare, "Write the expansion comparison at the last checkpoint here");
  cs->add_option("--compare-order", cen.compare_order, "Truncation order of the comparison");
  cs->callback([&] { action = [&] { run_census(cen); }; });

  BeattyArgs bt;
  auto* b = app.add_subcommand("beatty", "Beatty sequence utilities");
  b->require_subcommand(1);
  auto add_sequence_opts = [&](CLI::App* sub) {
    add_config(sub);
    sub->add_option("--alpha", bt.alpha, "sqrt:D | quad:p,q,r,d | e | pi")->required();
    sub->add_option("--beta", bt.beta, "Rational shift");
  };
  auto* bl = b->add_subcommand("list", "Members up to --xmax");
  add_sequence_opts(bl);
  bl->add_option("--xmax", bt.xmax, "Upper limit")->required();
  bl->callback([&] { action = [&] { run_beatty_list(bt); }; });
  auto* bc_ = b->add_subcommand("contains", "Membership of each n");
  add_sequence_opts(bc_);
  bc_->add_option("n", bt.values, "Integers")->required();
  bc_->callback([&] { action = [&] { run_beatty_contains(bt); }; });
  auto* bn = b->add_subcommand("nth", "floor(alpha r + beta) for each r");
  add_sequence_opts(bn);
  bn->add_option("r", bt.values, "Indices r >= 1")->required();
  bn->callback([&] { action = [&] { run_beatty_nth(bt); }; });
  auto* bf = b->add_subcommand("cf", "Continued fraction of alpha");
  add_config(bf);
  bf->add_option("--alpha", bt.alpha, "sqrt:D | quad:p,q,r,d | e | pi")->required();
  bf->add_option("--terms", bt.terms, "Number of partial quotients after a0");
  bf->callback([&] { action = [&] { run_beatty_cf(bt); }; });
  auto* bty = b->add_subcommand("type", "Empirical type from convergent denominators");
  add_config(bty);
  bty->add_option("--alpha", bt.alpha, "sqrt:D | quad:p,q,r,d | e | pi")->required();
  bty->add_option("--qmax", bt.qmax, "Largest denominator");
  bty->callback([&] { action = [&] { run_beatty_type(bt); }; });

  AsymptArgs as;
  auto* a = app.add_subcommand("asympt", "Evaluate a truncated asymptotic expansion");
  add_config(a);
  a->add_option("--class", as.cls, "cyclic | abelian-minus-cyclic | nilpotent-minus-abelian");
  a->add_option("--x", as.x, "Argument x > 16")->required();
  a->add_option("--order", as.order, "Truncation order");
  a->add_option("--alpha", as.alpha, "1 for the unrestricted count, else an alpha spec");
  a->callback([&] { action = [&] { run_asympt(as); }; });

  DiagnoseArgs dg;
  auto* d = app.add_subcommand("diagnose", "Numerical checks of the analytic estimates");
  d->require_subcommand(1);
  auto diag = [&](const char* name, const char* help, void (*fn)(const DiagnoseArgs&)) {
    auto* sub = d->add_subcommand(name, help);
    add_config(sub);
    sub->callback([&, fn] { action = [&, fn] { fn(dg); }; });
    return sub;
  };
  auto* det = diag("et", "Erdos-Turan discrepancy of {m alpha}", run_et);
  det->add_option("--alpha", dg.alpha);
  det->add_option("--N", dg.n_list, "Sequence lengths");
  det->add_option("--J", dg.J);
  det->add_option("--rho", dg.rho);
  det->add_option("--sigma", dg.sigma);
  auto* dv = diag("vaaler", "Vaaler approximation of the sawtooth on a grid", run_vaaler);
  dv->add_option("--H", dg.H, "Comma-separated degrees");
  dv->add_option("--points", dg.points, "Grid size");
  auto* dm = diag("minsum", "Sums of min(x/n, 1/||alpha n||) or min(x, 1/||alpha n + beta||)", run_minsum);
  dm->add_option("--alpha", dg.alpha);
  dm->add_option("--beta", dg.beta, "Shift; selects the second sum");
  dm->add_option("--x", dg.x, "Default: x = N");
  dm->add_option("--N", dg.n_list);
  dm->add_option("--tau", dg.tau);
  dm->add_option("--eps", dg.eps);
  auto* dd = diag("divisor", "Multiples of d in the Beatty sequence", run_divisor);
  dd->add_option("--alpha", dg.alpha);
  dd->add_option("--beta", dg.beta);
  dd->add_option("--d-max", dg.d_max);
  dd->add_option("--N", dg.n_list);
  dd->add_option("--tau", dg.tau);
  dd->add_option("--eps", dg.eps);
  auto* de = diag("expsum", "Multiplicative exponential sums", run_expsum);
  de->add_option("--f", dg.f, "one | mobius | rough:Z | sqfree-rough:Y[,P]");
  de->add_option("--alpha", dg.alpha);
  de->add_option("--j", dg.j);
  de->add_option("--N", dg.n_list);
  de->add_option("--tau", dg.tau);
  auto* dme = diag("mertens", "Mertens sum or product against its asymptotic", run_mertens);
  dme->add_option("--xmax", dg.xmax, "Comma-separated X values");
  dme->add_option("--which", dg.which, "sum or product");
  auto* dr = diag("rough", "Rough numbers in a Beatty sequence", run_rough);
  dr->add_option("--alpha", dg.alpha);
  dr->add_option("--beta", dg.beta);
  dr->add_option("--x", dg.x);
  dr->add_option("--y", dg.y);
  dr->add_option("--predictor", dg.predictor, "product or mertens");
  dr->add_option("--mode", dg.mode, "number or prime-factors");
  dr->add_option("--workers", dg.workers);

  try {
    auto args = merge_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  action();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const bc::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bc::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return 3;
  } catch (const bc::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
