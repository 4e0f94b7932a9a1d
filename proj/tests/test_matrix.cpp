#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "tendency/generators.hpp"
#include "tendency/matrix.hpp"
#include "tendency/matrix_io.hpp"
#include "tendency/rng.hpp"

using namespace tendency;
namespace fs = std::filesystem;

namespace {

FeatureMatrix random_features(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix f;
  f.data = Matrix(n, p);
  for (double& v : f.data.values) v = rng.uniform(-5.0, 5.0);
  return f;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("tendency_matrix_" + name)).string();
}

}  // namespace

TEST_CASE("pairwise distance of identical vectors is zero") {
  FeatureMatrix f;
  f.data = Matrix(2, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    f.data.at(0, j) = 1.5;
    f.data.at(1, j) = 1.5;
  }
  const DissimilarityMatrix d = pairwise_dissimilarity(f);
  CHECK(d.at(0, 1) == 0.0);
  CHECK(d.at(0, 0) == 0.0);
}

TEST_CASE("pairwise distance on 1-D scalars") {
  FeatureMatrix f;
  f.data = Matrix(2, 1);
  f.data.at(0, 0) = 0.0;
  f.data.at(1, 0) = 3.0;
  const DissimilarityMatrix d = pairwise_dissimilarity(f);
  CHECK(d.at(0, 1) == 3.0);
  CHECK(d.at(1, 0) == 3.0);
}

TEST_CASE("pairwise matches an independent double-loop recomputation") {
  const FeatureMatrix f = random_features(50, 4, 11);
  const DissimilarityMatrix d = pairwise_dissimilarity(f);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        const double diff = f.data.at(i, k) - f.data.at(j, k);
        acc += diff * diff;
      }
      const double expected = i == j ? 0.0 : std::sqrt(acc);
      CHECK(d.at(i, j) == expected);
    }
}

TEST_CASE("pairwise output is symmetric with zero diagonal on random inputs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeatureMatrix f = random_features(17 + 3 * seed, 3, seed);
    const DissimilarityMatrix d = pairwise_dissimilarity(f);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d.at(i, i) == 0.0);
      for (std::size_t j = 0; j < d.size(); ++j) {
        CHECK(d.at(i, j) == d.at(j, i));
        CHECK(d.at(i, j) >= 0.0);
      }
    }
  }
}

TEST_CASE("non-finite input is rejected naming the cell") {
  FeatureMatrix f = random_features(4, 2, 1);
  f.data.at(2, 1) = std::nan("");
  CHECK_THROWS_WITH_AS(pairwise_dissimilarity(f), doctest::Contains("(2,1)"), DataError);
}

TEST_CASE("performance kind validation rejects out-of-range entries") {
  Matrix m(2, 2, 0.5);
  m.at(0, 1) = -1.0;
  CHECK_NOTHROW(make_rect(m, RectKind::performance));
  m.at(1, 0) = 1.5;
  CHECK_THROWS_AS(make_rect(m, RectKind::performance), DataError);
  m.at(1, 0) = -0.5;
  CHECK_THROWS_AS(make_rect(m, RectKind::performance), DataError);
}

TEST_CASE("matrix file round trip") {
  Matrix m(3, 3);
  Rng rng(5);
  for (double& v : m.values) v = rng.uniform(-1e3, 1e3);
  const std::string path = temp_path("roundtrip.txt");
  write_matrix(m, path);
  const Matrix back = read_matrix(path);
  REQUIRE(back.rows == 3);
  REQUIRE(back.cols == 3);
  CHECK(back.values == m.values);
  fs::remove(path);
}

TEST_CASE("short row is reported with its line number") {
  const std::string path = temp_path("short_row.txt");
  std::ofstream(path) << "2 3\n1 2\n4 5 6\n";
  CHECK_THROWS_WITH_AS(read_matrix(path), doctest::Contains(":2"), DataError);
  fs::remove(path);
}

TEST_CASE("non-numeric token is reported with its line number") {
  const std::string path = temp_path("bad_token.txt");
  std::ofstream(path) << "2 2\n1 2\n3 x\n";
  CHECK_THROWS_WITH_AS(read_matrix(path), doctest::Contains(":3"), DataError);
  fs::remove(path);
}

TEST_CASE("malformed header is rejected") {
  const std::string path = temp_path("bad_header.txt");
  std::ofstream(path) << "2\n1 2\n";
  CHECK_THROWS_WITH_AS(read_matrix(path), doctest::Contains(":1"), DataError);
  fs::remove(path);
}

TEST_CASE("trailing comment lines are accepted") {
  const std::string path = temp_path("comments.txt");
  std::ofstream(path) << "1 2\n1 2\n# produced by a test\n";
  const Matrix m = read_matrix(path);
  CHECK(m.at(0, 1) == 2.0);
  fs::remove(path);
}

TEST_CASE("example1 has the documented shape and labels") {
  Example1Config cfg;
  cfg.rows = 400;  // scaled-down build of the same scene
  cfg.cols = 300;
  const Example1Data d = gen_example1(3, cfg);
  CHECK(d.matrix.row_count() == 400);
  CHECK(d.matrix.col_count() == 300);
  std::set<int> row_groups(d.row_labels.begin(), d.row_labels.end());
  std::set<int> col_groups(d.col_labels.begin(), d.col_labels.end());
  CHECK(row_groups == std::set<int>{0, 1, 2, 3});
  CHECK(col_groups == std::set<int>{0, 1, 2});
}

TEST_CASE("example1 is a pure function of the seed") {
  Example1Config cfg;
  cfg.rows = 80;
  cfg.cols = 60;
  const Example1Data a = gen_example1(9, cfg);
  const Example1Data b = gen_example1(9, cfg);
  CHECK(a.matrix.data.values == b.matrix.data.values);
  const Example1Data c = gen_example1(10, cfg);
  CHECK(a.matrix.data.values != c.matrix.data.values);
}

TEST_CASE("example1 full-size dimensions match the published scene") {
  const Example1Data d = gen_example1(0);
  CHECK(d.matrix.row_count() == 4000);
  CHECK(d.matrix.col_count() == 3000);
  CHECK(d.row_labels.size() == 4000);
}

TEST_CASE("example2 planted sets are disjoint and ranges hold") {
  Example2Config cfg;
  cfg.rows = 500;
  cfg.cols = 400;
  const Example2Data d = gen_example2(4, cfg);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[0].row_indices.size() == 50);
  CHECK(d.blocks[0].col_indices.size() == 100);
  CHECK(d.blocks[1].row_indices.size() == 100);
  CHECK(d.blocks[1].col_indices.size() == 50);

  std::set<std::size_t> rows0(d.blocks[0].row_indices.begin(), d.blocks[0].row_indices.end());
  for (std::size_t r : d.blocks[1].row_indices) CHECK(rows0.count(r) == 0);
  std::set<std::size_t> cols0(d.blocks[0].col_indices.begin(), d.blocks[0].col_indices.end());
  for (std::size_t c : d.blocks[1].col_indices) CHECK(cols0.count(c) == 0);

  for (double v : d.matrix.data.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 3.0);
  }
  for (std::size_t r : d.blocks[0].row_indices)
    for (std::size_t c : d.blocks[0].col_indices) CHECK(d.matrix.at(r, c) <= 1.0);
}

TEST_CASE("example2 planted and background means match their distributions") {
  Example2Config cfg;
  cfg.rows = 1000;
  cfg.cols = 800;
  const Example2Data d = gen_example2(8, cfg);
  std::vector<char> planted(cfg.rows * cfg.cols, 0);
  for (const auto& b : d.blocks)
    for (std::size_t r : b.row_indices)
      for (std::size_t c : b.col_indices) planted[r * cfg.cols + c] = 1;
  double planted_sum = 0.0, background_sum = 0.0;
  std::size_t planted_n = 0, background_n = 0;
  for (std::size_t i = 0; i < planted.size(); ++i) {
    if (planted[i]) {
      planted_sum += d.matrix.data.values[i];
      ++planted_n;
    } else {
      background_sum += d.matrix.data.values[i];
      ++background_n;
    }
  }
  CHECK(std::abs(planted_sum / static_cast<double>(planted_n) - 0.5) < 0.02);
  CHECK(std::abs(background_sum / static_cast<double>(background_n) - 1.5) < 0.02);
}

TEST_CASE("example2 contiguous mode produces runs") {
  Example2Config cfg;
  cfg.rows = 300;
  cfg.cols = 200;
  cfg.contiguous_blocks = true;
  const Example2Data d = gen_example2(2, cfg);
  for (const auto& b : d.blocks) {
    for (std::size_t i = 1; i < b.row_indices.size(); ++i)
      CHECK(b.row_indices[i] == b.row_indices[i - 1] + 1);
    for (std::size_t i = 1; i < b.col_indices.size(); ++i)
      CHECK(b.col_indices[i] == b.col_indices[i - 1] + 1);
  }
}

TEST_CASE("gaussian2d sizes, labels, and determinism") {
  const FeatureMatrix f = gen_gaussian2d(5000, 5, 1);
  CHECK(f.size() == 5000);
  REQUIRE(f.ground_truth_labels.has_value());
  std::array<std::size_t, 5> counts{};
  for (int l : *f.ground_truth_labels) counts[static_cast<std::size_t>(l)] += 1;
  std::size_t total = 0;
  for (std::size_t c : counts) {
    CHECK(c == 1000);
    total += c;
  }
  CHECK(total == 5000);

  const FeatureMatrix again = gen_gaussian2d(5000, 5, 1);
  CHECK(f.data.values == again.data.values);
}

TEST_CASE("gaussian2d with one cluster is a single label") {
  const FeatureMatrix f = gen_gaussian2d(40, 1, 2);
  for (int l : *f.ground_truth_labels) CHECK(l == 0);
}

TEST_CASE("example1 matrix round-trips bit-identically through the text format") {
  Example1Config cfg;
  cfg.rows = 60;  // same generator, desk-size slice
  cfg.cols = 45;
  const Example1Data d = gen_example1(6, cfg);
  const std::string path = temp_path("example1.txt");
  write_matrix(d.matrix.data, path);
  const Matrix back = read_matrix(path);
  CHECK(back.values == d.matrix.data.values);
  fs::remove(path);
}
