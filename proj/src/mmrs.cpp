#include "tendency/mmrs.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tendency/rng.hpp"

namespace tendency {

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_int(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

struct Assignment {
  std::vector<std::size_t> distinguished;
  std::vector<std::size_t> group_of;  // object -> distinguished position
};

Assignment maximin_with_groups(const ObjectView& objects, std::size_t k_prime, bool masked) {
  const std::size_t total = objects.count();
  if (k_prime < 1 || k_prime > total)
    throw DataError("maximin_select: k' = " + std::to_string(k_prime) +
                    " out of range [1, " + std::to_string(total) + "]");

  Assignment out;
  out.distinguished.reserve(k_prime);
  out.group_of.assign(total, 0);

  const std::vector<double> centroid = objects.centroid();
  std::vector<double> dist = objects.sq_dist_to_all(centroid.data(), masked);
  std::size_t first = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (dist[i] > dist[first]) first = i;
  out.distinguished.push_back(first);

  // min squared distance to the distinguished set so far, and which pick
  // attains it (earliest pick wins ties, matching nearest-assignment below)
  std::vector<double> min_dist = objects.sq_dist_to_all(first, masked);
  for (std::size_t round = 1; round < k_prime; ++round) {
    std::size_t next = 0;
    for (std::size_t i = 1; i < total; ++i)
      if (min_dist[i] > min_dist[next]) next = i;
    out.distinguished.push_back(next);
    const std::vector<double> d = objects.sq_dist_to_all(next, masked);
    for (std::size_t i = 0; i < total; ++i)
      if (d[i] < min_dist[i]) {
        min_dist[i] = d[i];
        out.group_of[i] = round;
      }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> maximin_select(const ObjectView& objects, std::size_t k_prime,
                                        bool masked) {
  return maximin_with_groups(objects, k_prime, masked).distinguished;
}

std::vector<std::size_t> maximin_select(const FeatureMatrix& features, std::size_t k_prime) {
  return maximin_select(ObjectView(features.data, ObjectView::Axis::rows), k_prime);
}

MmrsSample mmrs_sample(const ObjectView& objects, std::size_t k_prime, std::size_t n,
                       std::uint64_t seed, bool masked) {
  const std::size_t total = objects.count();
  if (n < k_prime || n > total)
    throw DataError("mmrs_sample: n = " + std::to_string(n) + " out of range [" +
                    std::to_string(k_prime) + ", " + std::to_string(total) + "]");

  Assignment a = maximin_with_groups(objects, k_prime, masked);

  std::vector<std::vector<std::size_t>> groups(k_prime);
  for (std::size_t i = 0; i < total; ++i) groups[a.group_of[i]].push_back(i);

  // proportional quotas by largest remainder, then ensure one slot per group
  std::vector<std::size_t> quota(k_prime, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < k_prime; ++g) {
    const double share =
        static_cast<double>(n) * static_cast<double>(groups[g].size()) /
        static_cast<double>(total);
    quota[g] = static_cast<std::size_t>(share);
    assigned += quota[g];
    remainders.emplace_back(share - static_cast<double>(quota[g]), g);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) quota[remainders[i % k_prime].second]++;
  for (std::size_t g = 0; g < k_prime; ++g) {
    while (quota[g] == 0) {
      std::size_t donor = k_prime;
      for (std::size_t h = 0; h < k_prime; ++h)
        if (quota[h] > 1 && (donor == k_prime || quota[h] > quota[donor])) donor = h;
      quota[donor]--;
      quota[g]++;
    }
  }

  Rng rng(seed);
  MmrsSample out;
  out.distinguished = a.distinguished;
  out.group_of = std::move(a.group_of);
  for (std::size_t g = 0; g < k_prime; ++g) {
    const auto& members = groups[g];
    const std::size_t dist_obj = out.distinguished[g];
    // always keep the distinguished representative; fill the rest at random
    std::vector<std::size_t> others;
    others.reserve(members.size());
    for (std::size_t idx : members)
      if (idx != dist_obj) others.push_back(idx);
    const std::size_t extra = std::min(quota[g] - 1, others.size());
    out.sample.push_back(dist_obj);
    for (std::size_t pos : rng.sample_without_replacement(others.size(), extra))
      out.sample.push_back(others[pos]);
  }
  std::sort(out.sample.begin(), out.sample.end());
  return out;
}

MmrsSample mmrs_sample(const FeatureMatrix& features, std::size_t k_prime, std::size_t n,
                       std::uint64_t seed) {
  return mmrs_sample(ObjectView(features.data, ObjectView::Axis::rows), k_prime, n, seed);
}

}  // namespace tendency
