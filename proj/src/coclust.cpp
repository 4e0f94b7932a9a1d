#include "tendency/coclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tendency/mmrs.hpp"

namespace tendency {

namespace {

struct SidePipeline {
  std::vector<std::size_t> sampled;   // ascending original indices
  std::vector<std::size_t> perm;      // original indices in iVAT order
  DissimilarityMatrix rdi;            // minimax distances in perm order
  VatOrdering ordering;               // over local sampled indices
  std::vector<int> labels;            // per perm position
};

// MMRS -> pairwise -> VAT -> minimax -> cut, over one axis of the rectangle
SidePipeline run_side(const ObjectView& objects, std::size_t samples, std::size_t k_prime,
                      std::size_t k, std::uint64_t seed, bool masked) {
  const std::size_t total = objects.count();
  if (samples > total)
    throw DataError("sco_ivat: sample size " + std::to_string(samples) +
                    " exceeds axis length " + std::to_string(total));
  SidePipeline side;
  if (samples == 0 || samples == total) {
    side.sampled.resize(total);
    std::iota(side.sampled.begin(), side.sampled.end(), 0);
  } else {
    side.sampled = mmrs_sample(objects, k_prime, samples, seed, masked).sample;
  }

  const Matrix sampled_vectors = objects.extract(side.sampled);
  FeatureMatrix fm;
  fm.data = sampled_vectors;
  DissimilarityMatrix dist =
      masked ? [&] {
        const std::size_t m = sampled_vectors.rows;
        ObjectView rows(sampled_vectors, ObjectView::Axis::rows);
        Matrix out(m, m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          const std::vector<double> sq = rows.sq_dist_to_all(i, true);
          for (std::size_t j = 0; j < m; ++j) out.at(i, j) = std::sqrt(sq[j]);
        }
        DissimilarityMatrix d;
        d.data = std::move(out);
        return d;
      }()
             : pairwise_dissimilarity(fm);

  VatResult vat = vat_reorder(dist);
  side.ordering = vat.ordering;
  side.rdi.data = ivat_of_ordered(vat.reordered.data);
  side.rdi.minimax_transformed = true;

  const std::vector<int> local_labels = cut_clusters(side.ordering, k);
  side.perm.reserve(side.sampled.size());
  side.labels.reserve(side.sampled.size());
  for (std::size_t local : side.ordering.permutation) {
    side.perm.push_back(side.sampled[local]);
    side.labels.push_back(local_labels[local]);
  }
  return side;
}

}  // namespace

CoClusterResult sco_ivat(const RectRelationalMatrix& d, const CoClusterOptions& opts) {
  const std::size_t rows = d.row_count();
  const std::size_t cols = d.col_count();
  if (rows == 0 || cols == 0) throw DataError("sco_ivat: empty relational matrix");

  SidePipeline row_side =
      run_side(ObjectView(d.data, ObjectView::Axis::rows), opts.row_samples, opts.k_prime,
               opts.k_rows, opts.seed, opts.masked_distances);
  SidePipeline col_side =
      run_side(ObjectView(d.data, ObjectView::Axis::cols), opts.col_samples, opts.k_prime,
               opts.k_cols, opts.seed, opts.masked_distances);

  CoClusterResult res;
  res.row_perm = std::move(row_side.perm);
  res.col_perm = std::move(col_side.perm);
  res.row_rdi = std::move(row_side.rdi);
  res.col_rdi = std::move(col_side.rdi);
  res.row_labels = std::move(row_side.labels);
  res.col_labels = std::move(col_side.labels);
  res.row_ordering = std::move(row_side.ordering);
  res.col_ordering = std::move(col_side.ordering);
  res.sampled_rows = std::move(row_side.sampled);
  res.sampled_cols = std::move(col_side.sampled);

  Matrix reordered(res.row_perm.size(), res.col_perm.size());
  for (std::size_t i = 0; i < res.row_perm.size(); ++i) {
    const double* src = d.data.row(res.row_perm[i]);
    double* dst = reordered.row(i);
    for (std::size_t j = 0; j < res.col_perm.size(); ++j) dst[j] = src[res.col_perm[j]];
  }
  res.reordered.data = std::move(reordered);
  res.reordered.kind = d.kind;
  return res;
}

std::vector<int> extend_labels(const Matrix& sampled, const std::vector<int>& sampled_labels,
                               const ObjectView& all, bool masked) {
  if (sampled.rows == 0) throw DataError("extend_labels: empty sampled set");
  if (sampled_labels.size() != sampled.rows)
    throw DataError("extend_labels: " + std::to_string(sampled_labels.size()) +
                    " labels for " + std::to_string(sampled.rows) + " sampled objects");
  if (sampled.cols != all.dim())
    throw DataError("extend_labels: feature dimension mismatch");

  const std::size_t total = all.count();
  std::vector<double> best(total, std::numeric_limits<double>::infinity());
  std::vector<int> labels(total, 0);
  for (std::size_t s = 0; s < sampled.rows; ++s) {
    const std::vector<double> sq = all.sq_dist_to_all(sampled.row(s), masked);
    for (std::size_t i = 0; i < total; ++i)
      if (sq[i] < best[i]) {  // strict: earlier sampled position wins ties
        best[i] = sq[i];
        labels[i] = sampled_labels[s];
      }
  }
  return labels;
}

std::vector<int> extend_labels(const FeatureMatrix& sampled,
                               const std::vector<int>& sampled_labels,
                               const FeatureMatrix& all) {
  return extend_labels(sampled.data, sampled_labels,
                       ObjectView(all.data, ObjectView::Axis::rows));
}

std::vector<CoClusterBlock> extract_coclusters(const CoClusterResult& result, double tau) {
  const Matrix& m = result.reordered.data;
  if (result.row_labels.size() != m.rows || result.col_labels.size() != m.cols)
    throw DataError("extract_coclusters: labels missing or misaligned");

  auto ranges = [](const std::vector<int>& labels) {
    std::vector<std::pair<std::size_t, std::size_t>> out;  // half-open runs
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= labels.size(); ++i)
      if (i == labels.size() || labels[i] != labels[begin]) {
        out.emplace_back(begin, i);
        begin = i;
      }
    return out;
  };
  const auto row_runs = ranges(result.row_labels);
  const auto col_runs = ranges(result.col_labels);

  double global_sum = 0.0;
  std::size_t global_count = 0;
  for (double v : m.values)
    if (v != -1.0) {
      global_sum += v;
      ++global_count;
    }
  const double global_mean =
      global_count ? global_sum / static_cast<double>(global_count)
                   : std::numeric_limits<double>::quiet_NaN();

  std::vector<CoClusterBlock> blocks;
  blocks.reserve(row_runs.size() * col_runs.size());
  for (const auto& [rb, re] : row_runs) {
    for (const auto& [cb, ce] : col_runs) {
      CoClusterBlock b;
      b.row_cluster = result.row_labels[rb];
      b.col_cluster = result.col_labels[cb];
      b.row_begin = rb;
      b.row_end = re;
      b.col_begin = cb;
      b.col_end = ce;
      b.global_mean = global_mean;
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t i = rb; i < re; ++i)
        for (std::size_t j = cb; j < ce; ++j) {
          const double v = m.at(i, j);
          if (v == -1.0) continue;
          sum += v;
          ++count;
        }
      if (count == 0) {
        b.undefined_mean = true;
        b.block_mean = std::numeric_limits<double>::quiet_NaN();
      } else {
        b.block_mean = sum / static_cast<double>(count);
        b.flagged = std::abs(b.block_mean - global_mean) >= tau;
      }
      blocks.push_back(b);
    }
  }
  return blocks;
}

double default_cocluster_tau(const CoClusterResult& result) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : result.reordered.data.values) {
    if (v == -1.0) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return 0.0;
  return 0.25 * (hi - lo);
}

}  // namespace tendency
