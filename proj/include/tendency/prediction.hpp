#ifndef TENDENCY_PREDICTION_HPP
#define TENDENCY_PREDICTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tendency/features.hpp"
#include "tendency/matrix.hpp"

namespace tendency {

struct LabeledDataset {
  std::vector<std::string> feature_names;
  Matrix rows;             // one booking per row
  std::vector<int> labels;  // 0 timely, 1 late

  std::size_t size() const { return rows.rows; }
  std::size_t width() const { return rows.cols; }
};

/// Which bookings back the aggregate lookups: the training split only
/// (leakage-safe default) or the whole corpus.
enum class AggregateSource { train_only, all };

/// Predictor layout: hourgroup one-hot (8), weekend flag, then for each of
/// the fifteen groupings its five aggregate measures plus a missing-lookup
/// indicator. Missing lookups are NaN until fill_missing substitutes the
/// training-population mean (the indicator stays 1).
LabeledDataset assemble_dataset(const std::vector<DerivedBooking>& bookings,
                                const FeatureTables& tables);

/// Per-feature means over non-missing entries; NaN-free output (features
/// with no observed value fall back to 0).
std::vector<double> feature_fill_means(const LabeledDataset& ds);
void fill_missing(LabeledDataset& ds, const std::vector<double>& means);

struct SplitIndices {
  std::vector<std::size_t> train, test, validation;
};

/// Undersamples the majority class to the minority size (seeded, without
/// replacement), then splits 64:20:16 class-stratified. Returned index
/// lists refer to the caller's row order and are ascending within splits.
SplitIndices balance_split_indices(const std::vector<int>& labels, std::uint64_t seed);

struct DatasetSplits {
  LabeledDataset train, test, validation;
};
DatasetSplits balance_split(const LabeledDataset& ds, std::uint64_t seed);

// ------------------------------------------------------------ classifier

struct LogisticModel {
  double bias = 0.0;
  std::vector<double> weights;  // on standardized features
  std::vector<std::string> feature_names;
  std::vector<double> feature_mean;
  std::vector<double> feature_std;  // 1 for constant features
};

struct TrainOptions {
  double l2 = 1e-4;
  std::size_t max_iters = 5000;
  double tol = 1e-8;  // gradient max-norm stopping threshold
};

struct TrainStats {
  std::size_t iterations = 0;
  double final_loss = 0.0;
  double grad_max_norm = 0.0;
  std::vector<double> loss_history;  // loss after each accepted step
};

/// Gradient descent with backtracking line search on the L2-regularized
/// mean negative log-likelihood, from zero weights over standardized
/// features. Deterministic.
LogisticModel train_logistic(const LabeledDataset& train, const TrainOptions& opts = {},
                             TrainStats* stats = nullptr);

/// Mean NLL + (l2/2)||w||^2 and its analytic gradient (bias last), both on
/// the standardized scale. Exposed for finite-difference verification.
double logistic_loss(const Matrix& standardized, const std::vector<int>& labels,
                     const std::vector<double>& weights_and_bias, double l2,
                     std::vector<double>* grad = nullptr);

Matrix standardize(const Matrix& rows, const std::vector<double>& mean,
                   const std::vector<double>& stddev);

/// P(label = 1) for one raw (unstandardized) row.
double predict_proba(const LogisticModel& model, const std::vector<double>& row);

struct ConfusionMatrix {
  std::size_t tn = 0, fp = 0, fn = 0, tp = 0;

  std::size_t total() const { return tn + fp + fn + tp; }
  double accuracy() const {
    return static_cast<double>(tn + tp) / static_cast<double>(total());
  }
};

/// Threshold 0.5 on P(late).
ConfusionMatrix evaluate(const LogisticModel& model, const LabeledDataset& ds);

void write_model(const LogisticModel& model, const std::string& path);
LogisticModel read_model(const std::string& path);

// ------------------------------------------------------------------ mRmR

struct RankedFeature {
  std::string name;
  double score = 0.0;  // relevance minus mean redundancy at selection time
};

/// Greedy minimum-redundancy maximum-relevance ranking. Features are
/// discretized into equal-frequency bins; the first pick maximizes
/// MI(feature; label), each next maximizes MI(f; label) minus the mean
/// MI(f; s) over already-selected s. Ties break lexicographically.
std::vector<RankedFeature> mrmr_rank(const LabeledDataset& ds, std::size_t top_k,
                                     std::size_t bins = 10);

/// Natural-log mutual information of two discretized columns (test hook).
double mutual_information(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> discretize_equal_frequency(const std::vector<double>& values,
                                            std::size_t bins);

}  // namespace tendency

#endif
