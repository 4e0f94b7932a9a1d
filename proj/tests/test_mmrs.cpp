#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tendency/mmrs.hpp"
#include "tendency/rng.hpp"

using namespace tendency;

namespace {

FeatureMatrix points_1d(const std::vector<double>& xs) {
  FeatureMatrix f;
  f.data = Matrix(xs.size(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) f.data.at(i, 0) = xs[i];
  return f;
}

FeatureMatrix random_features(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix f;
  f.data = Matrix(n, p);
  for (double& v : f.data.values) v = rng.uniform(-10.0, 10.0);
  return f;
}

// independent greedy maximin: full pairwise scan, no incremental state
std::vector<std::size_t> maximin_oracle(const FeatureMatrix& f, std::size_t k) {
  const std::size_t n = f.size();
  const std::size_t p = f.dim();
  auto dist = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      const double diff = f.data.at(a, c) - f.data.at(b, c);
      acc += diff * diff;
    }
    return acc;
  };
  std::vector<double> centroid(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < p; ++c) centroid[c] += f.data.at(i, c);
  for (double& v : centroid) v /= static_cast<double>(n);

  std::vector<std::size_t> picks;
  std::size_t first = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      const double diff = f.data.at(i, c) - centroid[c];
      acc += diff * diff;
    }
    if (acc > best) {
      best = acc;
      first = i;
    }
  }
  picks.push_back(first);
  while (picks.size() < k) {
    std::size_t next = 0;
    double next_score = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t s : picks) nearest = std::min(nearest, dist(i, s));
      if (nearest > next_score) {
        next_score = nearest;
        next = i;
      }
    }
    picks.push_back(next);
  }
  return picks;
}

}  // namespace

TEST_CASE("maximin on three collinear points") {
  const FeatureMatrix f = points_1d({0.0, 1.0, 10.0});
  const std::vector<std::size_t> picks = maximin_select(f, 2);
  // centroid ~3.67: 10 is farthest, then 0 maximizes the min distance
  CHECK(picks == std::vector<std::size_t>{2, 0});
}

TEST_CASE("maximin with k equal to the object count selects everything") {
  const FeatureMatrix f = random_features(7, 2, 3);
  const std::vector<std::size_t> picks = maximin_select(f, 7);
  std::set<std::size_t> unique(picks.begin(), picks.end());
  CHECK(unique.size() == 7);
}

TEST_CASE("maximin rejects out-of-range k") {
  const FeatureMatrix f = random_features(5, 2, 1);
  CHECK_THROWS_AS(maximin_select(f, 0), DataError);
  CHECK_THROWS_AS(maximin_select(f, 6), DataError);
}

TEST_CASE("maximin matches the brute-force greedy oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 20 + 18 * (seed % 10);
    const FeatureMatrix f = random_features(n, 3, seed);
    const std::size_t k = 2 + seed % 7;
    CHECK(maximin_select(f, k) == maximin_oracle(f, k));
  }
}

TEST_CASE("column-axis maximin equals row-axis maximin of the transpose") {
  Rng rng(17);
  Matrix m(9, 14);
  for (double& v : m.values) v = rng.uniform(0.0, 4.0);
  Matrix t(14, 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 14; ++j) t.at(j, i) = m.at(i, j);
  const auto cols = maximin_select(ObjectView(m, ObjectView::Axis::cols), 5);
  const auto rows_of_t = maximin_select(ObjectView(t, ObjectView::Axis::rows), 5);
  CHECK(cols == rows_of_t);
}

TEST_CASE("sample of everything is everything") {
  const FeatureMatrix f = random_features(12, 2, 5);
  const MmrsSample s = mmrs_sample(f, 3, 12, 42);
  std::vector<std::size_t> all(12);
  std::iota(all.begin(), all.end(), 0);
  CHECK(s.sample == all);
}

TEST_CASE("sample of exactly k' is the distinguished set") {
  const FeatureMatrix f = random_features(30, 2, 6);
  const MmrsSample s = mmrs_sample(f, 4, 4, 1);
  std::vector<std::size_t> expected = s.distinguished;
  std::sort(expected.begin(), expected.end());
  CHECK(s.sample == expected);
}

TEST_CASE("proportional quotas follow group sizes") {
  // two tight clusters of 80 and 20 points far apart
  FeatureMatrix f;
  f.data = Matrix(100, 1);
  for (std::size_t i = 0; i < 80; ++i) f.data.at(i, 0) = static_cast<double>(i % 8) * 0.01;
  for (std::size_t i = 80; i < 100; ++i)
    f.data.at(i, 0) = 1000.0 + static_cast<double>(i % 5) * 0.01;
  const MmrsSample s = mmrs_sample(f, 2, 10, 9);
  std::array<std::size_t, 2> group_counts{};
  for (std::size_t idx : s.sample) group_counts[s.group_of[idx]] += 1;
  // quotas 8 and 2 regardless of which group was found first
  std::sort(group_counts.begin(), group_counts.end());
  CHECK(group_counts[0] == 2);
  CHECK(group_counts[1] == 8);
}

TEST_CASE("group assignment matches a brute-force nearest scan") {
  const FeatureMatrix f = random_features(60, 3, 8);
  const MmrsSample s = mmrs_sample(f, 5, 20, 3);
  for (std::size_t i = 0; i < 60; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < s.distinguished.size(); ++pos) {
      double acc = 0.0;
      for (std::size_t c = 0; c < 3; ++c) {
        const double diff = f.data.at(i, c) - f.data.at(s.distinguished[pos], c);
        acc += diff * diff;
      }
      if (acc < best) {
        best = acc;
        best_pos = pos;
      }
    }
    CHECK(s.group_of[i] == best_pos);
  }
}

TEST_CASE("every group keeps its distinguished representative") {
  const FeatureMatrix f = random_features(80, 2, 12);
  const MmrsSample s = mmrs_sample(f, 6, 25, 7);
  std::set<std::size_t> sampled(s.sample.begin(), s.sample.end());
  for (std::size_t d : s.distinguished) CHECK(sampled.count(d) == 1);
  CHECK(s.sample.size() == 25);
  CHECK(sampled.size() == 25);  // no duplicates
}

TEST_CASE("identical inputs give identical samples") {
  const FeatureMatrix f = random_features(50, 2, 20);
  const MmrsSample a = mmrs_sample(f, 4, 18, 5);
  const MmrsSample b = mmrs_sample(f, 4, 18, 5);
  CHECK(a.sample == b.sample);
  CHECK(a.distinguished == b.distinguished);
  CHECK(a.group_of == b.group_of);
  const MmrsSample c = mmrs_sample(f, 4, 18, 6);
  CHECK(a.sample != c.sample);
}

TEST_CASE("sample size bounds are enforced") {
  const FeatureMatrix f = random_features(10, 2, 1);
  CHECK_THROWS_AS(mmrs_sample(f, 4, 3, 0), DataError);   // n < k'
  CHECK_THROWS_AS(mmrs_sample(f, 4, 11, 0), DataError);  // n > total
}
