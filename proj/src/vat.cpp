#include "tendency/vat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tendency {

VatResult vat_reorder(const DissimilarityMatrix& d) {
  const std::size_t n = d.size();
  if (n == 0) throw DataError("vat_reorder: empty dissimilarity matrix");

  VatOrdering ord;
  ord.permutation.reserve(n);
  ord.insertion_distances.reserve(n);
  ord.mst_edges.reserve(n - 1);

  // seed: row of the globally maximal entry, row-major scan
  std::size_t seed = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d.at(i, j) > best) {
        best = d.at(i, j);
        seed = i;
      }

  std::vector<char> selected(n, 0);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  selected[seed] = 1;
  ord.permutation.push_back(seed);
  ord.insertion_distances.push_back(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == seed) continue;
    nearest[j] = d.at(seed, j);
  }

  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    double pick_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (selected[j]) continue;
      if (nearest[j] < pick_dist) {  // strict: lowest index wins ties
        pick_dist = nearest[j];
        pick = j;
      }
    }
    // parent: lowest-index selected object attaining the insertion distance
    std::size_t parent = n;
    for (std::size_t j = 0; j < n; ++j)
      if (selected[j] && d.at(j, pick) == pick_dist) {
        parent = j;
        break;
      }
    selected[pick] = 1;
    ord.permutation.push_back(pick);
    ord.insertion_distances.push_back(pick_dist);
    ord.mst_edges.push_back({parent, pick, pick_dist});
    for (std::size_t j = 0; j < n; ++j) {
      if (selected[j]) continue;
      const double w = d.at(pick, j);
      if (w < nearest[j]) nearest[j] = w;
    }
  }

  Matrix reordered(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      reordered.at(a, b) = d.at(ord.permutation[a], ord.permutation[b]);

  VatResult res;
  res.ordering = std::move(ord);
  res.reordered.data = std::move(reordered);
  res.reordered.minimax_transformed = d.minimax_transformed;
  return res;
}

Matrix ivat_of_ordered(const Matrix& dstar) {
  const std::size_t n = dstar.rows;
  Matrix out(n, n, 0.0);
  // In Prim order, the nearest previously-inserted object of r joins them at
  // the MST insertion distance; every other previous object is reached
  // through it.
  for (std::size_t r = 1; r < n; ++r) {
    std::size_t j = 0;
    double w = dstar.at(r, 0);
    for (std::size_t k = 1; k < r; ++k)
      if (dstar.at(r, k) < w) {
        w = dstar.at(r, k);
        j = k;
      }
    out.at(r, j) = w;
    for (std::size_t k = 0; k < r; ++k) {
      if (k == j) continue;
      out.at(r, k) = std::max(w, out.at(j, k));
    }
    for (std::size_t k = 0; k < r; ++k) out.at(k, r) = out.at(r, k);
  }
  return out;
}

DissimilarityMatrix ivat_transform(const DissimilarityMatrix& d) {
  const VatResult vat = vat_reorder(d);
  const Matrix ordered = ivat_of_ordered(vat.reordered.data);
  const std::size_t n = d.size();
  Matrix out(n, n, 0.0);
  const auto& perm = vat.ordering.permutation;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.at(perm[a], perm[b]) = ordered.at(a, b);
  DissimilarityMatrix res;
  res.data = std::move(out);
  res.minimax_transformed = true;
  return res;
}

DissimilarityMatrix minimax_oracle(const DissimilarityMatrix& d, std::size_t bound) {
  const std::size_t n = d.size();
  if (n > bound)
    throw DataError("minimax_oracle: input size " + std::to_string(n) +
                    " exceeds bound " + std::to_string(bound));
  Matrix cur = d.data;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double via = std::max(cur.at(i, k), cur.at(k, j));
          if (via < cur.at(i, j)) {
            cur.at(i, j) = via;
            changed = true;
          }
        }
  }
  DissimilarityMatrix res;
  res.data = std::move(cur);
  res.minimax_transformed = true;
  return res;
}

std::vector<int> cut_clusters(const VatOrdering& ordering, std::size_t k) {
  const std::size_t n = ordering.size();
  if (k < 1 || k > n)
    throw DataError("cut_clusters: k = " + std::to_string(k) +
                    " out of range [1, " + std::to_string(n) + "]");

  // pick the k-1 edges to remove: heaviest first, later-inserted first on ties
  std::vector<std::size_t> order(ordering.mst_edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double wa = ordering.mst_edges[a].weight;
    const double wb = ordering.mst_edges[b].weight;
    if (wa != wb) return wa > wb;
    return a > b;
  });
  std::vector<char> removed(ordering.mst_edges.size(), 0);
  for (std::size_t i = 0; i + 1 < k && i < order.size(); ++i) removed[order[i]] = 1;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < ordering.mst_edges.size(); ++e) {
    if (removed[e]) continue;
    const auto& edge = ordering.mst_edges[e];
    parent[find(edge.parent)] = find(edge.child);
  }

  // number clusters by first appearance along the VAT ordering
  std::vector<int> labels(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t obj = ordering.permutation[t];
    const std::size_t r = find(obj);
    if (root_label[r] < 0) root_label[r] = next++;
    labels[obj] = root_label[r];
  }
  return labels;
}

std::size_t suggest_k(const VatOrdering& ordering, std::size_t max_k) {
  const std::size_t m = ordering.mst_edges.size();
  if (m < 2) return std::min<std::size_t>(1, max_k);
  double sum = 0.0, sumsq = 0.0;
  for (const auto& e : ordering.mst_edges) {
    sum += e.weight;
    sumsq += e.weight * e.weight;
  }
  std::size_t outliers = 0;
  for (const auto& e : ordering.mst_edges) {
    const double w = e.weight;
    const double mean = (sum - w) / static_cast<double>(m - 1);
    const double var =
        std::max(0.0, (sumsq - w * w) / static_cast<double>(m - 1) - mean * mean);
    if (w > mean + 3.0 * std::sqrt(var)) ++outliers;
  }
  return std::min(max_k, 1 + outliers);
}

}  // namespace tendency
