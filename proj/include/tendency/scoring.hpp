#ifndef TENDENCY_SCORING_HPP
#define TENDENCY_SCORING_HPP

#include <string>
#include <vector>

#include "tendency/features.hpp"
#include "tendency/prediction.hpp"

namespace tendency {

/// One driver candidate for a booking: where the driver is, where the
/// pickup is, and when.
struct ScoreRequest {
  std::string driver_id;
  GeoCell driver_gh;  // precision 6
  GeoCell pickup_gh;  // precision 6
  Dow dow = Dow::weekday;
  int hourgroup = 0;
};

enum class Smoothing { none, laplace };

struct ScoreConfig {
  std::size_t min_bookings = 5;  // qualification threshold per geohash
  Smoothing smoothing = Smoothing::laplace;
  double epsilon = 0.5;  // denominator floor in percentage points (raw mode)
};

struct RatioScore {
  double score = 0.0;
  bool qualified = false;  // min_bookings met at both geohashes
};

/// Grid-to-driver LPR ratio score, max-optimal:
///   (LPR[driverGh]/LPR[driver,driverGh] + LPR[pickupGh]/LPR[driver,pickupGh]) / 2.
/// Laplace smoothing replaces every rate by (late+1)/(total+2)*100; raw mode
/// floors denominators at epsilon. Missing grid-level aggregates are an
/// error naming the geohash; a driver below min_bookings at either geohash
/// is reported unqualified (rank_candidates then grants it the request-local
/// qualified maximum).
RatioScore lpr_ratio_score(const ScoreRequest& req, const FeatureTables& tables,
                           const ScoreConfig& cfg);

/// Probability of a timely pickup: one minus the late-class probability of
/// the logistic model over the request's predictor row (assembled exactly
/// like the training rows; missing lookups take the trained feature mean).
double logistic_score(const ScoreRequest& req, const LogisticModel& model,
                      const FeatureTables& tables);

enum class ScoreMechanism { ratio, logistic };

struct ScoredCandidate {
  std::string driver_id;
  double score = 0.0;
  bool qualified = true;
};

/// Scores all candidates of one booking request (shared pickup geohash) and
/// orders them by descending score, ascending driver id on ties. Under the
/// ratio mechanism, sub-threshold drivers receive the maximum score among
/// qualified candidates of this request.
std::vector<ScoredCandidate> rank_candidates(const std::vector<ScoreRequest>& reqs,
                                             ScoreMechanism mechanism,
                                             const FeatureTables& tables,
                                             const ScoreConfig& cfg,
                                             const LogisticModel* model = nullptr);

}  // namespace tendency

#endif
