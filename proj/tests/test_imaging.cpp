#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "tendency/imaging.hpp"
#include "tendency/rng.hpp"

using namespace tendency;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("tendency_img_" + name)).string();
}

}  // namespace

TEST_CASE("single zero cell renders black") {
  Matrix m(1, 1, 0.0);
  const RasterImage img = render_grayscale(m);
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  CHECK(img.pixels == std::vector<std::uint8_t>{0});
}

TEST_CASE("constant matrix renders all black") {
  Matrix m(3, 4, 7.25);
  const RasterImage img = render_grayscale(m);
  for (std::uint8_t p : img.pixels) CHECK(p == 0);
}

TEST_CASE("extremes map to 0 and 255") {
  Matrix m(1, 2);
  m.at(0, 0) = 0.0;
  m.at(0, 1) = 42.0;
  const RasterImage img = render_grayscale(m);
  CHECK(img.pixels[0] == 0);
  CHECK(img.pixels[1] == 255);
}

TEST_CASE("monotone entries map to monotone gray levels") {
  Rng rng(4);
  Matrix m(8, 8);
  for (double& v : m.values) v = rng.uniform(-3.0, 9.0);
  const RasterImage img = render_grayscale(m);
  std::vector<std::size_t> order(m.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return m.values[a] < m.values[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    CHECK(img.pixels[order[i]] >= img.pixels[order[i - 1]]);
}

TEST_CASE("grayscale rendering is scale and location invariant") {
  Rng rng(9);
  Matrix m(6, 6);
  for (double& v : m.values) v = rng.uniform(0.0, 5.0);
  const RasterImage base = render_grayscale(m);
  for (const auto& [a, b] : std::vector<std::pair<double, double>>{
           {2.0, 0.0}, {0.5, 3.0}, {17.0, -40.0}}) {
    Matrix scaled = m;
    for (double& v : scaled.values) v = a * v + b;
    CHECK(render_grayscale(scaled).pixels == base.pixels);
  }
}

TEST_CASE("performance colors: sentinel and endpoints") {
  Matrix m(1, 4);
  m.at(0, 0) = -1.0;
  m.at(0, 1) = 0.0;
  m.at(0, 2) = 1.0;
  m.at(0, 3) = 0.5;
  const RasterImage img = render_performance(m);
  REQUIRE(img.channels == 3);
  CHECK(img.pixels[0] == 0);    // -1 -> blue
  CHECK(img.pixels[1] == 0);
  CHECK(img.pixels[2] == 255);
  CHECK(img.pixels[3] == 0);    // 0 -> green
  CHECK(img.pixels[4] == 255);
  CHECK(img.pixels[5] == 0);
  CHECK(img.pixels[6] == 255);  // 1 -> red
  CHECK(img.pixels[7] == 0);
  CHECK(img.pixels[8] == 0);
  CHECK(img.pixels[9] == 255);  // 0.5 -> yellow midpoint
  CHECK(img.pixels[10] == 255);
  CHECK(img.pixels[11] == 0);
}

TEST_CASE("performance rendering rejects out-of-range values naming the cell") {
  Matrix m(2, 2, 0.3);
  m.at(1, 0) = 1.5;
  CHECK_THROWS_WITH_AS(render_performance(m), doctest::Contains("(1,0)"), DataError);
}

TEST_CASE("upscale repeats pixels") {
  Matrix m(1, 2);
  m.at(0, 0) = 0.0;
  m.at(0, 1) = 1.0;
  const RasterImage img = render_grayscale(m, 3);
  CHECK(img.width == 6);
  CHECK(img.height == 3);
  CHECK(img.pixels[0] == 0);
  CHECK(img.pixels[3] == 255);
}

TEST_CASE("pgm files carry the exact header and round-trip") {
  Rng rng(2);
  Matrix m(5, 7);
  for (double& v : m.values) v = rng.uniform(0.0, 1.0);
  const RasterImage img = render_grayscale(m);
  const std::string path = temp_path("gray.pgm");
  write_pnm(img, path);

  // independent byte-level parse of the header
  std::ifstream in(path, std::ios::binary);
  std::string header(9, '\0');
  in.read(header.data(), 9);
  CHECK(header == "P5\n7 5\n25");  // "P5\n<w> <h>\n255\n" prefix
  in.seekg(0);
  std::vector<char> all((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  CHECK(all.size() == std::string("P5\n7 5\n255\n").size() + 35);

  const RasterImage back = read_pnm(path);
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);
  fs::remove(path);
}

TEST_CASE("ppm files round-trip identical samples") {
  Matrix m(2, 3);
  m.at(0, 0) = -1.0;
  m.at(0, 1) = 0.25;
  m.at(0, 2) = 0.75;
  m.at(1, 0) = 0.0;
  m.at(1, 1) = 1.0;
  m.at(1, 2) = 0.5;
  const RasterImage img = render_performance(m);
  const std::string path = temp_path("color.ppm");
  write_pnm(img, path);
  const RasterImage back = read_pnm(path);
  CHECK(back.channels == 3);
  CHECK(back.pixels == img.pixels);
  fs::remove(path);
}
