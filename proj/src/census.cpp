#include "beattycensus/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "beattycensus/arith.hpp"
#include "beattycensus/beatty.hpp"
#include "beattycensus/errors.hpp"
#include "beattycensus/segment.hpp"

namespace bc::census {
namespace {

struct Tally {
  std::uint64_t c = 0, a = 0, n = 0, c_star = 0, a_star = 0, n_star = 0;

  void add(arith::NumberClass k, std::uint64_t& cc, std::uint64_t& aa, std::uint64_t& nn) {
    cc += arith::is_cyclic(k);
    aa += arith::is_abelian(k);
    nn += arith::is_nilpotent(k);
  }
};

class SegmentCounter {
 public:
  SegmentCounter(const SegmentFactorizer& fz, const BeattyParams& params)
      : fz_(&fz), params_(&params) {}

  Tally operator()(const Segment& seg) {
    fz_->factor(seg, factors_);
    classes_.resize(factors_.size());
    Tally t;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      classes_[i] = arith::classify(factors_.at(i));
      t.add(classes_[i], t.c, t.a, t.n);
    }
    const auto lo = static_cast<std::int64_t>(seg.lo);
    beatty::for_each_member(lo, static_cast<std::int64_t>(seg.hi), *params_, [&](std::int64_t m) {
      t.add(classes_[static_cast<std::size_t>(m - lo)], t.c_star, t.a_star, t.n_star);
    });
    return t;
  }

 private:
  const SegmentFactorizer* fz_;
  const BeattyParams* params_;
  SegmentFactors factors_;
  std::vector<arith::NumberClass> classes_;
};

void validate(const CensusConfig& cfg, const std::vector<std::uint64_t>& checkpoints) {
  if (cfg.x_max > kMaxCensusX) throw UsageError("census: x_max exceeds 2^62");
  if (cfg.segment_size < kMinSegmentSize) {
    throw UsageError("census: segment_size must be >= " + std::to_string(kMinSegmentSize));
  }
  if (cfg.worker_count < 1) throw UsageError("census: worker_count must be >= 1");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] > cfg.x_max) throw UsageError("census: checkpoint beyond x_max");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw UsageError("census: checkpoints must be strictly ascending");
    }
  }
}

}  // namespace

std::vector<std::uint64_t> default_checkpoints(std::uint64_t x_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 100'000; x < x_max; x *= 10) out.push_back(x);
  out.push_back(x_max);
  return out;
}

std::vector<CensusRow> run_census(const CensusConfig& config, const RowCallback& on_row,
                                  const std::optional<CensusRow>& resume) {
  std::vector<std::uint64_t> checkpoints = config.checkpoints;
  if (checkpoints.empty()) checkpoints.push_back(config.x_max);
  validate(config, checkpoints);

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  CensusRow totals;
  std::uint64_t done = 0;
  if (resume) {
    if (std::find(checkpoints.begin(), checkpoints.end(), resume->x) == checkpoints.end()) {
      throw UsageError("census: resume row x=" + std::to_string(resume->x) +
                       " is not one of the checkpoints");
    }
    totals = *resume;
    done = resume->x;
  }

  const SegmentFactorizer factorizer(std::max<std::uint64_t>(config.x_max, 1));
  std::vector<CensusRow> rows;
  for (std::uint64_t cp : checkpoints) {
    if (resume && cp <= done) continue;
    if (cp > done) {
      const auto segments = split_range(done + 1, cp, config.segment_size);
      const auto tallies = map_segments(segments, config.worker_count, [&] {
        return SegmentCounter(factorizer, config.params);
      });
      for (const Tally& t : tallies) {  // ordered reduction
        totals.c += t.c;
        totals.a += t.a;
        totals.n += t.n;
        totals.c_star += t.c_star;
        totals.a_star += t.a_star;
        totals.n_star += t.n_star;
      }
    }
    totals.x = cp;
    totals.wall_time = elapsed();
    done = cp;
    rows.push_back(totals);
    if (on_row) on_row(totals);
  }
  return rows;
}

RatioReport ratio_report(std::span<const CensusRow> rows, const AlphaValue& alpha) {
  if (rows.empty()) throw UsageError("ratio_report: no rows");
  RatioReport report;
  const double inv_alpha = 1.0 / alpha.to_double();
  for (const CensusRow& r : rows) {
    if (r.c == 0 || r.a == 0 || r.n == 0) {
      report.excluded.push_back(r.x);
      continue;
    }
    RatioRow out;
    out.x = r.x;
    out.inv_alpha = inv_alpha;
    out.c_ratio = static_cast<double>(r.c_star) / static_cast<double>(r.c);
    out.a_ratio = static_cast<double>(r.a_star) / static_cast<double>(r.a);
    out.n_ratio = static_cast<double>(r.n_star) / static_cast<double>(r.n);
    out.c_dev = std::abs(out.c_ratio - inv_alpha);
    out.a_dev = std::abs(out.a_ratio - inv_alpha);
    out.n_dev = std::abs(out.n_ratio - inv_alpha);
    report.rows.push_back(out);
  }
  if (!report.rows.empty()) {
    const RatioRow& first = report.rows.front();
    const RatioRow& last = report.rows.back();
    report.c_converging = last.c_dev <= first.c_dev;
    report.a_converging = last.a_dev <= first.a_dev;
    report.n_converging = last.n_dev <= first.n_dev;
  }
  return report;
}

std::vector<ComparisonRow> theorem_comparison(const CensusRow& row, int order, double alpha,
                                              std::span<const analytic::SeriesClass> classes) {
  using analytic::SeriesClass;
  static constexpr SeriesClass kAll[] = {SeriesClass::Cyclic, SeriesClass::AbelianMinusCyclic,
                                         SeriesClass::NilpotentMinusAbelian};
  if (classes.empty()) classes = kAll;
  for (SeriesClass c : classes) {
    const int max_order = analytic::series_expansion(c).max_printed_order;
    if (order < 0 || order > max_order) {
      throw UsageError("theorem_comparison: order " + std::to_string(order) + " exceeds the " +
                       std::to_string(max_order) + " printed coefficients for " +
                       std::string(analytic::to_string(c)));
    }
  }
  std::vector<ComparisonRow> out;
  const auto x = static_cast<double>(row.x);
  for (SeriesClass c : classes) {
    ComparisonRow cr;
    cr.class_name = std::string(analytic::to_string(c));
    switch (c) {
      case SeriesClass::Cyclic:
        cr.count = row.c_star;
        cr.full_count = row.c;
        break;
      case SeriesClass::AbelianMinusCyclic:
        cr.count = row.a_star - row.c_star;
        cr.full_count = row.a - row.c;
        break;
      case SeriesClass::NilpotentMinusAbelian:
        cr.count = row.n_star - row.a_star;
        cr.full_count = row.n - row.a;
        break;
    }
    cr.prediction = analytic::eval_series(c, x, order, alpha);
    cr.full_prediction = analytic::eval_series(c, x, order, 1.0);
    cr.ratio = static_cast<double>(cr.count) / cr.prediction;
    cr.full_ratio = static_cast<double>(cr.full_count) / cr.full_prediction;
    out.push_back(cr);
  }
  return out;
}

}  // namespace bc::census
