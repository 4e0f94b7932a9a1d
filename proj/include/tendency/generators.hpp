#ifndef TENDENCY_GENERATORS_HPP
#define TENDENCY_GENERATORS_HPP

#include <cstdint>
#include <vector>

#include "tendency/matrix.hpp"

namespace tendency {

/// Mixed row/column object scene: row and column objects are 2-D Gaussian
/// clouds and the matrix holds the row-to-column point distances. Two of the
/// row clouds share centers with two column clouds, producing two
/// low-distance co-cluster blocks. Centers sit >= 10 pooled standard
/// deviations apart; per-cluster sigmas below.
struct Example1Config {
  std::size_t rows = 4000;  // split equally over 4 row clusters
  std::size_t cols = 3000;  // split equally over 3 column clusters
  // cluster centers (x, y) on a 40-unit lattice; row clusters 0/1 coincide
  // with column clusters 0/1 to plant the two co-clusters
  double row_centers[4][2] = {{0, 0}, {40, 0}, {0, 40}, {40, 40}};
  double col_centers[3][2] = {{0, 0}, {40, 0}, {80, 40}};
  double row_sigma[4][2] = {{1.0, 0.8}, {0.9, 1.1}, {1.2, 0.7}, {0.8, 0.9}};
  double col_sigma[3][2] = {{1.0, 1.0}, {0.7, 1.2}, {1.1, 0.8}};
};

struct Example1Data {
  RectRelationalMatrix matrix;
  std::vector<int> row_labels;  // 0..3
  std::vector<int> col_labels;  // 0..2
};

Example1Data gen_example1(std::uint64_t seed, const Example1Config& config = {});

/// Uniform background on [0, 3] with two planted uniform-[0, 1] blocks at
/// randomly chosen row/column index sets (scattered by default, contiguous
/// runs behind the flag). Block index sets are mutually disjoint per axis.
/// Block sizes scale with the matrix: rows/10 x cols/4 and rows/5 x cols/8.
struct Example2Config {
  std::size_t rows = 10000;
  std::size_t cols = 8000;
  bool contiguous_blocks = false;
};

struct PlantedBlock {
  std::vector<std::size_t> row_indices;
  std::vector<std::size_t> col_indices;
};

struct Example2Data {
  RectRelationalMatrix matrix;
  std::vector<PlantedBlock> blocks;  // two entries
};

Example2Data gen_example2(std::uint64_t seed, const Example2Config& config = {});

/// 2-D mixture of k well-separated Gaussians (centers 20 units apart on a
/// lattice, unit-order sigmas), sizes as equal as possible, with labels.
FeatureMatrix gen_gaussian2d(std::size_t n_total, std::size_t k_clusters,
                             std::uint64_t seed);

}  // namespace tendency

#endif
