#ifndef TENDENCY_COCLUST_HPP
#define TENDENCY_COCLUST_HPP

#include <cstdint>
#include <vector>

#include "tendency/matrix.hpp"
#include "tendency/vat.hpp"

namespace tendency {

struct CoClusterOptions {
  std::size_t row_samples = 0;  // m; 0 or row_count() disables row sampling
  std::size_t col_samples = 0;  // n; 0 or col_count() disables column sampling
  std::size_t k_prime = 15;     // distinguished objects per sampled side
  std::size_t k_rows = 1;
  std::size_t k_cols = 1;
  std::uint64_t seed = 0;
  bool masked_distances = false;  // skip -1 sentinel coordinates in feature distances
};

/// Output of the sampled co-clustering pipeline. All positional arrays are
/// aligned: row i of `reordered` is original row `row_perm[i]`, its cluster
/// is `row_labels[i]`, and `row_rdi` is the minimax-transformed sampled-row
/// dissimilarity in the same order (columns likewise).
struct CoClusterResult {
  std::vector<std::size_t> row_perm;  // RP: original row indices in iVAT order
  std::vector<std::size_t> col_perm;  // CP: original column indices in iVAT order
  DissimilarityMatrix row_rdi;
  DissimilarityMatrix col_rdi;
  RectRelationalMatrix reordered;     // reordered(i,j) = original(RP[i], CP[j])
  std::vector<int> row_labels;        // per reordered row, contiguous runs
  std::vector<int> col_labels;        // per reordered column, contiguous runs
  VatOrdering row_ordering;           // over the sampled-row set (local indices)
  VatOrdering col_ordering;
  std::vector<std::size_t> sampled_rows;  // ascending original indices
  std::vector<std::size_t> sampled_cols;
};

/// Treats rows as N-dimensional and columns as M-dimensional feature
/// vectors, MMRS-samples each side (skipped where the requested sample size
/// equals the axis length), minimax-orders both sampled dissimilarity
/// matrices, reorders the sampled rectangle by both permutations, and cuts
/// single-linkage clusters on each side. Both sides draw from the same seed,
/// so processing the transpose swaps the roles exactly.
CoClusterResult sco_ivat(const RectRelationalMatrix& d, const CoClusterOptions& opts);

/// Nearest-prototype label extension: every object of `all` takes the label
/// of its nearest object in `sampled` (ties: lowest sampled position).
std::vector<int> extend_labels(const FeatureMatrix& sampled,
                               const std::vector<int>& sampled_labels,
                               const FeatureMatrix& all);
std::vector<int> extend_labels(const Matrix& sampled, const std::vector<int>& sampled_labels,
                               const ObjectView& all, bool masked = false);

/// One (row cluster, column cluster) cell of the reordered matrix.
/// Ranges are half-open over reordered positions. `undefined_mean` marks
/// all-sentinel blocks; they are never flagged.
struct CoClusterBlock {
  int row_cluster = 0;
  int col_cluster = 0;
  std::size_t row_begin = 0, row_end = 0;
  std::size_t col_begin = 0, col_end = 0;
  double block_mean = 0.0;
  double global_mean = 0.0;
  bool undefined_mean = false;
  bool flagged = false;
};

/// Scores every cluster pair: a pair is a co-cluster when its sentinel-free
/// block mean deviates from the sentinel-free global mean by at least tau.
std::vector<CoClusterBlock> extract_coclusters(const CoClusterResult& result, double tau);

/// The default threshold: a quarter of the value range of the non-sentinel
/// entries of the reordered matrix.
double default_cocluster_tau(const CoClusterResult& result);

}  // namespace tendency

#endif
