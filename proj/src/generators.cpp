#include "tendency/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tendency/rng.hpp"

namespace tendency {

namespace {

std::vector<int> equal_partition_labels(std::size_t n, std::size_t k) {
  std::vector<int> labels(n);
  // first n % k clusters take one extra member
  std::size_t pos = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t size = n / k + (c < n % k ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) labels[pos++] = static_cast<int>(c);
  }
  return labels;
}

}  // namespace

Example1Data gen_example1(std::uint64_t seed, const Example1Config& cfg) {
  Rng rng(seed);
  Example1Data out;
  out.row_labels = equal_partition_labels(cfg.rows, 4);
  out.col_labels = equal_partition_labels(cfg.cols, 3);

  std::vector<double> rx(cfg.rows), ry(cfg.rows);
  for (std::size_t i = 0; i < cfg.rows; ++i) {
    const int c = out.row_labels[i];
    rx[i] = rng.normal(cfg.row_centers[c][0], cfg.row_sigma[c][0]);
    ry[i] = rng.normal(cfg.row_centers[c][1], cfg.row_sigma[c][1]);
  }
  std::vector<double> cx(cfg.cols), cy(cfg.cols);
  for (std::size_t j = 0; j < cfg.cols; ++j) {
    const int c = out.col_labels[j];
    cx[j] = rng.normal(cfg.col_centers[c][0], cfg.col_sigma[c][0]);
    cy[j] = rng.normal(cfg.col_centers[c][1], cfg.col_sigma[c][1]);
  }

  Matrix m(cfg.rows, cfg.cols);
  parallel_for(cfg.rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double* row = m.row(i);
      for (std::size_t j = 0; j < cfg.cols; ++j) {
        const double dx = rx[i] - cx[j];
        const double dy = ry[i] - cy[j];
        row[j] = std::sqrt(dx * dx + dy * dy);
      }
    }
  }, 64);
  out.matrix.data = std::move(m);
  out.matrix.kind = RectKind::generic;
  return out;
}

Example2Data gen_example2(std::uint64_t seed, const Example2Config& cfg) {
  Rng rng(seed);
  Example2Data out;

  Matrix m(cfg.rows, cfg.cols);
  for (double& v : m.values) v = rng.uniform(0.0, 3.0);

  const std::size_t block_rows[2] = {cfg.rows / 10, cfg.rows / 5};
  const std::size_t block_cols[2] = {cfg.cols / 4, cfg.cols / 8};

  // disjoint per-axis index sets for the two blocks, drawn in one pass
  auto pick_two = [&](std::size_t total, std::size_t n1, std::size_t n2) {
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sets;
    if (cfg.contiguous_blocks) {
      // two non-overlapping runs at random offsets, first block first
      const std::size_t start1 =
          static_cast<std::size_t>(rng.uniform_int(total - n1 - n2 + 1));
      const std::size_t start2 = start1 + n1 +
          static_cast<std::size_t>(rng.uniform_int(total - n1 - n2 - start1 + 1));
      for (std::size_t i = 0; i < n1; ++i) sets.first.push_back(start1 + i);
      for (std::size_t i = 0; i < n2; ++i) sets.second.push_back(start2 + i);
    } else {
      const std::vector<std::size_t> both = rng.sample_without_replacement(total, n1 + n2);
      std::vector<std::size_t> shuffled = both;
      rng.shuffle(shuffled);
      sets.first.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n1));
      sets.second.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n1), shuffled.end());
      std::sort(sets.first.begin(), sets.first.end());
      std::sort(sets.second.begin(), sets.second.end());
    }
    return sets;
  };
  const auto row_sets = pick_two(cfg.rows, block_rows[0], block_rows[1]);
  const auto col_sets = pick_two(cfg.cols, block_cols[0], block_cols[1]);

  out.blocks.resize(2);
  out.blocks[0].row_indices = row_sets.first;
  out.blocks[0].col_indices = col_sets.first;
  out.blocks[1].row_indices = row_sets.second;
  out.blocks[1].col_indices = col_sets.second;

  for (const PlantedBlock& b : out.blocks)
    for (std::size_t i : b.row_indices) {
      double* row = m.row(i);
      for (std::size_t j : b.col_indices) row[j] = rng.uniform(0.0, 1.0);
    }

  out.matrix.data = std::move(m);
  out.matrix.kind = RectKind::generic;
  return out;
}

FeatureMatrix gen_gaussian2d(std::size_t n_total, std::size_t k_clusters,
                             std::uint64_t seed) {
  if (k_clusters < 1 || n_total < k_clusters)
    throw DataError("gen_gaussian2d: need n_total >= k_clusters >= 1");
  Rng rng(seed);
  FeatureMatrix out;
  out.ground_truth_labels = equal_partition_labels(n_total, k_clusters);
  out.data = Matrix(n_total, 2);

  const std::size_t side = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(k_clusters))));
  for (std::size_t i = 0; i < n_total; ++i) {
    const std::size_t c = static_cast<std::size_t>((*out.ground_truth_labels)[i]);
    const double cx = static_cast<double>(c % side) * 20.0;
    const double cy = static_cast<double>(c / side) * 20.0;
    out.data.at(i, 0) = rng.normal(cx, 1.0);
    out.data.at(i, 1) = rng.normal(cy, 1.0);
  }
  return out;
}

}  // namespace tendency
