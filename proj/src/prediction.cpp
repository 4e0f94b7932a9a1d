#include "tendency/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "tendency/rng.hpp"

namespace tendency {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::array<const char*, 5> kMeasureNames = {
    "total_bookings", "avg_diff_ata_eta", "lpr_pct", "avg_start_ata", "avg_end_ata"};

double measure_value(const AggRow& row, std::size_t measure) {
  switch (measure) {
    case 0: return static_cast<double>(row.total_bookings);
    case 1: return row.avg_diff_ata_eta;
    case 2: return row.lpr_pct;
    case 3: return row.avg_start_ata;
    default: return row.avg_end_ata;
  }
}

}  // namespace

LabeledDataset assemble_dataset(const std::vector<DerivedBooking>& bookings,
                                const FeatureTables& tables) {
  if (bookings.empty()) throw DataError("assemble_dataset: no bookings");

  LabeledDataset ds;
  for (int h = 0; h < 8; ++h) ds.feature_names.push_back("hourgroup_" + std::to_string(h));
  ds.feature_names.push_back("is_weekend");
  for (Grouping g : kAllGroupings) {
    const std::string prefix = grouping_name(g);
    for (const char* m : kMeasureNames) ds.feature_names.push_back(prefix + "." + m);
    ds.feature_names.push_back(prefix + ".missing");
  }

  ds.rows = Matrix(bookings.size(), ds.feature_names.size(), 0.0);
  ds.labels.reserve(bookings.size());
  for (std::size_t i = 0; i < bookings.size(); ++i) {
    const DerivedBooking& b = bookings[i];
    double* row = ds.rows.row(i);
    row[b.hourgroup] = 1.0;
    row[8] = b.dow == Dow::weekend ? 1.0 : 0.0;
    std::size_t col = 9;
    for (Grouping g : kAllGroupings) {
      const AggRow* agg = tables.of(g).find(booking_key(b, g));
      if (agg != nullptr) {
        for (std::size_t m = 0; m < 5; ++m) row[col + m] = measure_value(*agg, m);
        row[col + 5] = 0.0;
      } else {
        for (std::size_t m = 0; m < 5; ++m) row[col + m] = kNaN;
        row[col + 5] = 1.0;
      }
      col += 6;
    }
    ds.labels.push_back(b.is_late_pickup);
  }
  return ds;
}

std::vector<double> feature_fill_means(const LabeledDataset& ds) {
  std::vector<double> mean(ds.width(), 0.0);
  std::vector<std::size_t> count(ds.width(), 0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double* row = ds.rows.row(i);
    for (std::size_t j = 0; j < ds.width(); ++j)
      if (!std::isnan(row[j])) {
        mean[j] += row[j];
        count[j] += 1;
      }
  }
  for (std::size_t j = 0; j < ds.width(); ++j)
    mean[j] = count[j] ? mean[j] / static_cast<double>(count[j]) : 0.0;
  return mean;
}

void fill_missing(LabeledDataset& ds, const std::vector<double>& means) {
  if (means.size() != ds.width()) throw DataError("fill_missing: width mismatch");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    double* row = ds.rows.row(i);
    for (std::size_t j = 0; j < ds.width(); ++j)
      if (std::isnan(row[j])) row[j] = means[j];
  }
}

// ----------------------------------------------------------------- splits

SplitIndices balance_split_indices(const std::vector<int>& labels, std::uint64_t seed) {
  std::vector<std::size_t> class0, class1;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? class1 : class0).push_back(i);
  if (class0.empty() || class1.empty())
    throw DataError("balance_split: both classes must be present");

  Rng rng(seed);
  auto undersample = [&](std::vector<std::size_t>& v, std::size_t target) {
    if (v.size() <= target) return;
    std::vector<std::size_t> chosen;
    for (std::size_t pos : rng.sample_without_replacement(v.size(), target))
      chosen.push_back(v[pos]);
    v = std::move(chosen);
  };
  const std::size_t minority = std::min(class0.size(), class1.size());
  undersample(class0, minority);
  undersample(class1, minority);

  // stratified 64:20:16 using largest-remainder quotas within each class
  SplitIndices out;
  for (std::vector<std::size_t>* cls : {&class0, &class1}) {
    std::vector<std::size_t> shuffled = *cls;
    rng.shuffle(shuffled);
    const double b = static_cast<double>(shuffled.size());
    const std::array<double, 3> shares = {0.64 * b, 0.20 * b, 0.16 * b};
    std::array<std::size_t, 3> quota{};
    std::size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
      quota[s] = static_cast<std::size_t>(shares[s]);
      assigned += quota[s];
    }
    std::array<std::pair<double, int>, 3> rem;
    for (int s = 0; s < 3; ++s)
      rem[s] = {shares[s] - static_cast<double>(quota[s]), s};
    std::stable_sort(rem.begin(), rem.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t i = 0; assigned < shuffled.size(); ++i, ++assigned)
      quota[rem[i % 3].second]++;

    std::size_t pos = 0;
    for (std::size_t i = 0; i < quota[0]; ++i) out.train.push_back(shuffled[pos++]);
    for (std::size_t i = 0; i < quota[1]; ++i) out.test.push_back(shuffled[pos++]);
    for (std::size_t i = 0; i < quota[2]; ++i) out.validation.push_back(shuffled[pos++]);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.validation.begin(), out.validation.end());
  return out;
}

namespace {

LabeledDataset slice(const LabeledDataset& ds, const std::vector<std::size_t>& indices) {
  LabeledDataset out;
  out.feature_names = ds.feature_names;
  out.rows = Matrix(indices.size(), ds.width());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const double* src = ds.rows.row(indices[i]);
    std::copy(src, src + ds.width(), out.rows.row(i));
    out.labels.push_back(ds.labels[indices[i]]);
  }
  return out;
}

}  // namespace

DatasetSplits balance_split(const LabeledDataset& ds, std::uint64_t seed) {
  const SplitIndices idx = balance_split_indices(ds.labels, seed);
  return {slice(ds, idx.train), slice(ds, idx.test), slice(ds, idx.validation)};
}

// ------------------------------------------------------------- classifier

Matrix standardize(const Matrix& rows, const std::vector<double>& mean,
                   const std::vector<double>& stddev) {
  Matrix out(rows.rows, rows.cols);
  for (std::size_t i = 0; i < rows.rows; ++i)
    for (std::size_t j = 0; j < rows.cols; ++j)
      out.at(i, j) = (rows.at(i, j) - mean[j]) / stddev[j];
  return out;
}

double logistic_loss(const Matrix& x, const std::vector<int>& labels,
                     const std::vector<double>& wb, double l2, std::vector<double>* grad) {
  const std::size_t n = x.rows;
  const std::size_t p = x.cols;
  if (wb.size() != p + 1) throw DataError("logistic_loss: parameter size mismatch");
  const double bias = wb[p];

  if (grad != nullptr) grad->assign(p + 1, 0.0);
  double loss = 0.0;
  // fixed-size chunked accumulation keeps sums reproducible under threads
  constexpr std::size_t kChunk = 1024;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> chunk_loss(nchunks, 0.0);
  std::vector<std::vector<double>> chunk_grad;
  if (grad != nullptr) chunk_grad.assign(nchunks, std::vector<double>(p + 1, 0.0));

  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    const std::size_t c = begin / kChunk;
    double lsum = 0.0;
    std::vector<double>* g = grad != nullptr ? &chunk_grad[c] : nullptr;
    for (std::size_t i = begin; i < end; ++i) {
      const double* row = x.row(i);
      double z = bias;
      for (std::size_t j = 0; j < p; ++j) z += wb[j] * row[j];
      const double y = static_cast<double>(labels[i]);
      // softplus(z) - y z, stable for large |z|
      lsum += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y * z;
      if (g != nullptr) {
        const double resid = 1.0 / (1.0 + std::exp(-z)) - y;
        for (std::size_t j = 0; j < p; ++j) (*g)[j] += resid * row[j];
        (*g)[p] += resid;
      }
    }
    chunk_loss[c] = lsum;
  }, kChunk);

  for (double l : chunk_loss) loss += l;
  loss /= static_cast<double>(n);
  if (!std::isfinite(loss)) throw DataError("logistic_loss: non-finite loss");

  double penalty = 0.0;
  for (std::size_t j = 0; j < p; ++j) penalty += wb[j] * wb[j];
  loss += 0.5 * l2 * penalty;

  if (grad != nullptr) {
    for (const auto& g : chunk_grad)
      for (std::size_t j = 0; j <= p; ++j) (*grad)[j] += g[j];
    for (std::size_t j = 0; j <= p; ++j) (*grad)[j] /= static_cast<double>(n);
    for (std::size_t j = 0; j < p; ++j) (*grad)[j] += l2 * wb[j];
  }
  return loss;
}

LogisticModel train_logistic(const LabeledDataset& train, const TrainOptions& opts,
                             TrainStats* stats) {
  const std::size_t n = train.size();
  const std::size_t p = train.width();
  if (n == 0) throw DataError("train_logistic: empty training set");

  LogisticModel model;
  model.feature_names = train.feature_names;
  model.feature_mean.assign(p, 0.0);
  model.feature_std.assign(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += train.rows.at(i, j);
    model.feature_mean[j] = s / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = train.rows.at(i, j) - model.feature_mean[j];
      s += d * d;
    }
    const double sd = std::sqrt(s / static_cast<double>(n));
    model.feature_std[j] = sd > 1e-12 ? sd : 1.0;
  }

  const Matrix x = standardize(train.rows, model.feature_mean, model.feature_std);
  std::vector<double> wb(p + 1, 0.0);
  std::vector<double> grad;
  double loss = logistic_loss(x, train.labels, wb, opts.l2, &grad);
  if (stats != nullptr) stats->loss_history.push_back(loss);

  double step = 1.0;
  std::size_t it = 0;
  for (; it < opts.max_iters; ++it) {
    double gmax = 0.0, gsq = 0.0;
    for (double g : grad) {
      gmax = std::max(gmax, std::abs(g));
      gsq += g * g;
    }
    if (stats != nullptr) stats->grad_max_norm = gmax;
    if (gmax < opts.tol) break;

    // backtracking line search with Armijo decrease, warm-started step
    step = std::min(1.0, step * 2.0);
    std::vector<double> trial(p + 1);
    double trial_loss = 0.0;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      for (std::size_t j = 0; j <= p; ++j) trial[j] = wb[j] - step * grad[j];
      trial_loss = logistic_loss(x, train.labels, trial, opts.l2);
      if (trial_loss <= loss - 1e-4 * step * gsq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no representable descent step left
    wb = trial;
    loss = trial_loss;
    logistic_loss(x, train.labels, wb, opts.l2, &grad);
    if (stats != nullptr) stats->loss_history.push_back(loss);
  }

  model.weights.assign(wb.begin(), wb.begin() + static_cast<std::ptrdiff_t>(p));
  model.bias = wb[p];
  if (stats != nullptr) {
    stats->iterations = it;
    stats->final_loss = loss;
  }
  return model;
}

double predict_proba(const LogisticModel& model, const std::vector<double>& row) {
  if (row.size() != model.weights.size())
    throw DataError("predict_proba: row width " + std::to_string(row.size()) +
                    " does not match model width " + std::to_string(model.weights.size()));
  double z = model.bias;
  for (std::size_t j = 0; j < row.size(); ++j)
    z += model.weights[j] * (row[j] - model.feature_mean[j]) / model.feature_std[j];
  return 1.0 / (1.0 + std::exp(-z));
}

ConfusionMatrix evaluate(const LogisticModel& model, const LabeledDataset& ds) {
  if (ds.size() == 0) throw DataError("evaluate: empty dataset");
  ConfusionMatrix cm;
  std::vector<double> row(ds.width());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double* src = ds.rows.row(i);
    row.assign(src, src + ds.width());
    const bool predicted_late = predict_proba(model, row) >= 0.5;
    const bool late = ds.labels[i] == 1;
    if (late && predicted_late) ++cm.tp;
    else if (late && !predicted_late) ++cm.fn;
    else if (!late && predicted_late) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

void write_model(const LogisticModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out << "logistic-model v1\n";
  out << "features " << model.weights.size() << '\n';
  for (std::size_t j = 0; j < model.weights.size(); ++j)
    out << model.feature_names[j] << ' ' << format_double(model.feature_mean[j]) << ' '
        << format_double(model.feature_std[j]) << ' ' << format_double(model.weights[j])
        << '\n';
  out << "bias " << format_double(model.bias) << '\n';
  if (!out) throw DataError("write failed: " + path);
}

LogisticModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "logistic-model v1")
    throw DataError(path + ": not a logistic model file");
  std::string word;
  std::size_t count = 0;
  in >> word >> count;
  if (word != "features") throw DataError(path + ": malformed feature count");
  LogisticModel model;
  for (std::size_t j = 0; j < count; ++j) {
    std::string name;
    double mean, sd, w;
    if (!(in >> name >> mean >> sd >> w)) throw DataError(path + ": truncated feature list");
    model.feature_names.push_back(name);
    model.feature_mean.push_back(mean);
    model.feature_std.push_back(sd);
    model.weights.push_back(w);
  }
  if (!(in >> word >> model.bias) || word != "bias")
    throw DataError(path + ": missing bias line");
  return model;
}

// ------------------------------------------------------------------ mRmR

std::vector<int> discretize_equal_frequency(const std::vector<double>& values,
                                            std::size_t bins) {
  if (bins < 1) throw DataError("discretize: bins must be >= 1");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (std::size_t b = 1; b < bins; ++b) {
    const double e = sorted[b * sorted.size() / bins];
    if (edges.empty() || e > edges.back()) edges.push_back(e);
  }
  std::vector<int> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = static_cast<int>(
        std::upper_bound(edges.begin(), edges.end(), values[i]) - edges.begin());
  return out;
}

double mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty())
    throw DataError("mutual_information: size mismatch or empty");
  const int ka = *std::max_element(a.begin(), a.end()) + 1;
  const int kb = *std::max_element(b.begin(), b.end()) + 1;
  std::vector<std::size_t> joint(static_cast<std::size_t>(ka) * kb, 0);
  std::vector<std::size_t> ca(ka, 0), cb(kb, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[static_cast<std::size_t>(a[i]) * kb + b[i]] += 1;
    ca[a[i]] += 1;
    cb[b[i]] += 1;
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (int i = 0; i < ka; ++i)
    for (int j = 0; j < kb; ++j) {
      const std::size_t c = joint[static_cast<std::size_t>(i) * kb + j];
      if (c == 0) continue;
      const double pxy = static_cast<double>(c) / n;
      const double px = static_cast<double>(ca[i]) / n;
      const double py = static_cast<double>(cb[j]) / n;
      mi += pxy * std::log(pxy / (px * py));
    }
  return std::max(0.0, mi);
}

std::vector<RankedFeature> mrmr_rank(const LabeledDataset& ds, std::size_t top_k,
                                     std::size_t bins) {
  const std::size_t p = ds.width();
  if (top_k > p)
    throw DataError("mrmr_rank: top_k = " + std::to_string(top_k) + " exceeds feature count " +
                    std::to_string(p));
  if (ds.size() == 0) throw DataError("mrmr_rank: empty dataset");

  std::vector<std::vector<int>> disc(p);
  std::vector<double> column(ds.size());
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < ds.size(); ++i) column[i] = ds.rows.at(i, j);
    disc[j] = discretize_equal_frequency(column, bins);
  }

  std::vector<double> relevance(p);
  for (std::size_t j = 0; j < p; ++j) relevance[j] = mutual_information(disc[j], ds.labels);

  std::vector<RankedFeature> ranked;
  std::vector<char> used(p, 0);
  std::vector<std::vector<double>> redundancy(p);  // filled lazily per selected
  std::vector<std::size_t> selected;
  while (ranked.size() < top_k) {
    std::size_t best = p;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
      if (used[j]) continue;
      double red = 0.0;
      for (std::size_t s = 0; s < selected.size(); ++s)
        red += redundancy[selected[s]][j];
      double score = relevance[j];
      if (!selected.empty()) score -= red / static_cast<double>(selected.size());
      if (score > best_score ||
          (score == best_score && ds.feature_names[j] < ds.feature_names[best])) {
        best_score = score;
        best = j;
      }
    }
    used[best] = 1;
    selected.push_back(best);
    redundancy[best].resize(p);
    for (std::size_t j = 0; j < p; ++j)
      if (!used[j]) redundancy[best][j] = mutual_information(disc[best], disc[j]);
    ranked.push_back({ds.feature_names[best], best_score});
  }
  return ranked;
}

}  // namespace tendency
