#include "tendency/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace tendency {

namespace {

double smoothed_lpr(const AggRow* row, Smoothing smoothing) {
  const double late = row ? static_cast<double>(row->late_count) : 0.0;
  const double total = row ? static_cast<double>(row->total_bookings) : 0.0;
  if (smoothing == Smoothing::laplace) return 100.0 * (late + 1.0) / (total + 2.0);
  return total > 0.0 ? 100.0 * late / total : 0.0;
}

const AggRow* require_grid_row(const FeatureTables& tables, Grouping g,
                               const GeoCell& cell) {
  AggKey key;
  key.gh = cell.code;
  const AggRow* row = tables.of(g).find(key);
  if (row == nullptr)
    throw DataError("no grid-level aggregates for geohash '" + cell.code + "'");
  return row;
}

}  // namespace

RatioScore lpr_ratio_score(const ScoreRequest& req, const FeatureTables& tables,
                           const ScoreConfig& cfg) {
  const AggRow* grid_d = require_grid_row(tables, Grouping::driverGh, req.driver_gh);
  const AggRow* grid_p = require_grid_row(tables, Grouping::pickupGh, req.pickup_gh);

  AggKey key_d;
  key_d.driver = req.driver_id;
  key_d.gh = req.driver_gh.code;
  const AggRow* driver_d = tables.of(Grouping::driver_driverGh).find(key_d);
  AggKey key_p;
  key_p.driver = req.driver_id;
  key_p.gh = req.pickup_gh.code;
  const AggRow* driver_p = tables.of(Grouping::driver_pickupGh).find(key_p);

  RatioScore out;
  const std::size_t booked_d = driver_d ? driver_d->total_bookings : 0;
  const std::size_t booked_p = driver_p ? driver_p->total_bookings : 0;
  out.qualified = booked_d >= cfg.min_bookings && booked_p >= cfg.min_bookings;

  auto ratio = [&](const AggRow* grid, const AggRow* driver) {
    const double num = smoothed_lpr(grid, cfg.smoothing);
    double den = smoothed_lpr(driver, cfg.smoothing);
    if (cfg.smoothing == Smoothing::none) den = std::max(den, cfg.epsilon);
    return num / den;
  };
  out.score = 0.5 * (ratio(grid_d, driver_d) + ratio(grid_p, driver_p));
  return out;
}

double logistic_score(const ScoreRequest& req, const LogisticModel& model,
                      const FeatureTables& tables) {
  // mirror of the dataset assembly row layout
  const std::size_t width = model.weights.size();
  if (width != 9 + 15 * 6)
    throw DataError("logistic_score: model width " + std::to_string(width) +
                    " does not match the assembled predictor layout");
  std::vector<double> row(width, 0.0);
  if (req.hourgroup < 0 || req.hourgroup > 7)
    throw DataError("logistic_score: hourgroup out of range");
  row[static_cast<std::size_t>(req.hourgroup)] = 1.0;
  row[8] = req.dow == Dow::weekend ? 1.0 : 0.0;

  DerivedBooking probe;
  probe.base.driver_id = req.driver_id;
  probe.driver_gh = req.driver_gh;
  probe.pickup_gh = req.pickup_gh;
  probe.dow = req.dow;
  probe.hourgroup = req.hourgroup;

  std::size_t col = 9;
  for (Grouping g : kAllGroupings) {
    const AggRow* agg = tables.of(g).find(booking_key(probe, g));
    if (agg != nullptr) {
      row[col + 0] = static_cast<double>(agg->total_bookings);
      row[col + 1] = agg->avg_diff_ata_eta;
      row[col + 2] = agg->lpr_pct;
      row[col + 3] = agg->avg_start_ata;
      row[col + 4] = agg->avg_end_ata;
      row[col + 5] = 0.0;
    } else {
      // training-population mean: standardizes to zero, like fill_missing
      for (std::size_t m = 0; m < 5; ++m) row[col + m] = model.feature_mean[col + m];
      row[col + 5] = 1.0;
    }
    col += 6;
  }
  return 1.0 - predict_proba(model, row);
}

std::vector<ScoredCandidate> rank_candidates(const std::vector<ScoreRequest>& reqs,
                                             ScoreMechanism mechanism,
                                             const FeatureTables& tables,
                                             const ScoreConfig& cfg,
                                             const LogisticModel* model) {
  if (reqs.empty()) throw DataError("rank_candidates: no candidates");
  std::vector<ScoredCandidate> out;
  out.reserve(reqs.size());

  if (mechanism == ScoreMechanism::ratio) {
    double qualified_max = -std::numeric_limits<double>::infinity();
    bool any_qualified = false;
    for (const auto& req : reqs) {
      const RatioScore rs = lpr_ratio_score(req, tables, cfg);
      out.push_back({req.driver_id, rs.score, rs.qualified});
      if (rs.qualified) {
        any_qualified = true;
        qualified_max = std::max(qualified_max, rs.score);
      }
    }
    // footnote rule: newcomers score with the best qualified candidate;
    // with no qualified candidate at all, raw scores stand
    if (any_qualified)
      for (auto& c : out)
        if (!c.qualified) c.score = qualified_max;
  } else {
    if (model == nullptr) throw DataError("rank_candidates: logistic mechanism needs a model");
    for (const auto& req : reqs)
      out.push_back({req.driver_id, logistic_score(req, *model, tables), true});
  }

  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.driver_id < b.driver_id;
  });
  return out;
}

}  // namespace tendency
