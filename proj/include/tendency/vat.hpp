#ifndef TENDENCY_VAT_HPP
#define TENDENCY_VAT_HPP

#include <cstdint>
#include <vector>

#include "tendency/matrix.hpp"

namespace tendency {

struct MstEdge {
  std::size_t parent = 0;  // previously inserted object
  std::size_t child = 0;   // object inserted by this edge
  double weight = 0.0;
};

/// Result of the MST-based reordering. `permutation[t]` is the original
/// index of the object inserted at step t; `insertion_distances[t]` is the
/// distance at which it joined the selected set (0 for the seed object).
/// The n-1 edges form a spanning tree in insertion order.
struct VatOrdering {
  std::vector<std::size_t> permutation;
  std::vector<double> insertion_distances;
  std::vector<MstEdge> mst_edges;

  std::size_t size() const { return permutation.size(); }
};

/// Modified-Prim reordering. The seed object is the row index of the
/// globally maximal entry (row-major argmax); every subsequent pick is the
/// unselected object nearest to the selected set. All ties break to the
/// lowest index. Also returns the input permuted by the ordering on both
/// axes.
struct VatResult {
  VatOrdering ordering;
  DissimilarityMatrix reordered;
};
VatResult vat_reorder(const DissimilarityMatrix& d);

/// Path-based minimax transform: output (i,j) is the smallest possible
/// maximum edge weight over paths from i to j, computed by the O(n^2)
/// recursion over the VAT-ordered matrix. Output indices match the input.
DissimilarityMatrix ivat_transform(const DissimilarityMatrix& d);

/// Same transform applied to an already VAT-ordered matrix; output stays in
/// that order. Used internally and by the co-clustering pipeline.
Matrix ivat_of_ordered(const Matrix& dstar);

/// Exact minimax distances by iterating the relaxation
/// d(i,j) <- min(d(i,j), max(d(i,k), d(k,j))) to a fixpoint. Quadratic-cubic
/// and intended as an independent check of ivat_transform; refuses inputs
/// larger than `bound`.
DissimilarityMatrix minimax_oracle(const DissimilarityMatrix& d, std::size_t bound = 60);

/// Single-linkage partition by deleting the k-1 largest MST edges (ties:
/// the later-inserted edge goes first). labels[i] is the cluster of original
/// object i; label ids are numbered by first appearance along the VAT
/// ordering, so each cluster occupies a contiguous index range of it.
std::vector<int> cut_clusters(const VatOrdering& ordering, std::size_t k);

/// Gap heuristic for the cluster count: one cluster plus the number of MST
/// edges whose weight exceeds mean + 3*stddev of the remaining edge weights
/// (leave-one-out, so a single dominant edge is detectable), capped at max_k.
std::size_t suggest_k(const VatOrdering& ordering, std::size_t max_k);

}  // namespace tendency

#endif
