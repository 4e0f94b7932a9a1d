#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "tendency/geohash.hpp"
#include "tendency/rng.hpp"

using namespace tendency;

namespace {

// reference encoder on a different route: quantize each coordinate to its
// bit count as an integer, then interleave the integer bits (lon first)
std::string reference_encode(double lat, double lon, std::size_t precision) {
  static const char* alphabet = "0123456789bcdefghjkmnpqrstuvwxyz";
  const std::size_t total_bits = precision * 5;
  const std::size_t lon_bits = (total_bits + 1) / 2;
  const std::size_t lat_bits = total_bits / 2;

  auto quantize = [](double v, double lo, double hi, std::size_t bits) {
    const double span = hi - lo;
    const double scaled = (v - lo) / span * static_cast<double>(1ULL << bits);
    std::uint64_t q = static_cast<std::uint64_t>(scaled);
    const std::uint64_t max = (1ULL << bits) - 1;
    return q > max ? max : q;
  };
  const std::uint64_t qlon = quantize(lon, -180.0, 180.0, lon_bits);
  const std::uint64_t qlat = quantize(lat, -90.0, 90.0, lat_bits);

  std::string code;
  int digit = 0, bits = 0;
  for (std::size_t b = 0; b < total_bits; ++b) {
    int bit;
    if (b % 2 == 0) {
      const std::size_t pos = lon_bits - 1 - b / 2;
      bit = static_cast<int>((qlon >> pos) & 1);
    } else {
      const std::size_t pos = lat_bits - 1 - b / 2;
      bit = static_cast<int>((qlat >> pos) & 1);
    }
    digit = digit * 2 + bit;
    if (++bits == 5) {
      code += alphabet[digit];
      digit = 0;
      bits = 0;
    }
  }
  return code;
}

}  // namespace

TEST_CASE("published test vectors") {
  CHECK(geohash_encode(57.64911, 10.40744, 11).code == "u4pruydqqvj");
  CHECK(geohash_encode(42.605, -5.603, 5).code == "ezs42");
  CHECK(geohash_encode(0.0, 0.0, 1).code == "s");
  CHECK(geohash_encode(51.433333, -0.2, 6).code == "gcpue7");
}

TEST_CASE("decode of ezs42 gives the published box") {
  const GeoBox box = geohash_decode(GeoCell{"ezs42"});
  CHECK(box.lat_min == doctest::Approx(42.5830078).epsilon(1e-6));
  CHECK(box.lat_max == doctest::Approx(42.6269531).epsilon(1e-6));
  CHECK(box.lon_min == doctest::Approx(-5.625).epsilon(1e-6));
  CHECK(box.lon_max == doctest::Approx(-5.5810546875).epsilon(1e-6));
}

TEST_CASE("invalid characters are rejected") {
  for (const char* code : {"a", "i", "l", "o", "u4a"})
    CHECK_THROWS_AS(geohash_decode(GeoCell{code}), DataError);
  CHECK_THROWS_AS(geohash_decode(GeoCell{""}), DataError);
}

TEST_CASE("coordinate and precision ranges are enforced") {
  CHECK_THROWS_AS(geohash_encode(91.0, 0.0, 6), DataError);
  CHECK_THROWS_AS(geohash_encode(0.0, 181.0, 6), DataError);
  CHECK_THROWS_AS(geohash_encode(0.0, 0.0, 0), DataError);
  CHECK_THROWS_AS(geohash_encode(0.0, 0.0, 13), DataError);
}

TEST_CASE("round-trip containment over random points and precisions") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const double lat = rng.uniform(-90.0, 90.0);
    const double lon = rng.uniform(-180.0, 180.0);
    const std::size_t precision = 1 + rng.uniform_int(12);
    const GeoCell cell = geohash_encode(lat, lon, precision);
    CHECK(cell.code.size() == precision);
    const GeoBox box = geohash_decode(cell);
    CHECK(box.contains(lat, lon));
  }
}

TEST_CASE("encode agrees with the independent quantization encoder") {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const double lat = rng.uniform(-90.0, 90.0);
    const double lon = rng.uniform(-180.0, 180.0);
    const std::size_t precision = 1 + rng.uniform_int(12);
    CHECK(geohash_encode(lat, lon, precision).code ==
          reference_encode(lat, lon, precision));
  }
}

TEST_CASE("encoding the box center reproduces the cell") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const GeoCell cell = geohash_encode(rng.uniform(-90.0, 90.0),
                                        rng.uniform(-180.0, 180.0),
                                        1 + rng.uniform_int(12));
    const GeoBox box = geohash_decode(cell);
    CHECK(geohash_encode(box.lat_center(), box.lon_center(), cell.precision()).code ==
          cell.code);
  }
}

TEST_CASE("prefix cells contain their refinements") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const GeoCell cell = geohash_encode(rng.uniform(-90.0, 90.0),
                                        rng.uniform(-180.0, 180.0),
                                        2 + rng.uniform_int(11));
    const GeoBox fine = geohash_decode(cell);
    for (std::size_t k = 1; k < cell.precision(); ++k) {
      const GeoBox coarse = geohash_decode(GeoCell{cell.code.substr(0, k)});
      CHECK(coarse.lat_min <= fine.lat_min);
      CHECK(coarse.lat_max >= fine.lat_max);
      CHECK(coarse.lon_min <= fine.lon_min);
      CHECK(coarse.lon_max >= fine.lon_max);
    }
  }
}

TEST_CASE("box spans halve alternately with each extra bit") {
  // per character: 5 bits, alternating lon/lat starting at lon, so the
  // widths shrink by 2^ceil(5k/2) (lon) and 2^floor(5k/2) (lat)
  const GeoBox b1 = geohash_decode(GeoCell{"s"});
  CHECK(b1.lon_max - b1.lon_min == doctest::Approx(360.0 / 8.0));
  CHECK(b1.lat_max - b1.lat_min == doctest::Approx(180.0 / 4.0));
  const GeoBox b2 = geohash_decode(GeoCell{"s0"});
  CHECK(b2.lon_max - b2.lon_min == doctest::Approx(360.0 / 32.0));
  CHECK(b2.lat_max - b2.lat_min == doctest::Approx(180.0 / 32.0));
  const GeoBox b3 = geohash_decode(GeoCell{"s00"});
  CHECK(b3.lon_max - b3.lon_min == doctest::Approx(360.0 / 256.0));
  CHECK(b3.lat_max - b3.lat_min == doctest::Approx(180.0 / 128.0));
}

TEST_CASE("precision-6 equatorial cells measure about 1.22 x 0.61 km") {
  const GeoBox box = geohash_decode(geohash_encode(0.0001, 103.8, 6));
  const double km_per_deg = 2.0 * 3.14159265358979323846 * 6371.0 / 360.0;
  const double width_km = (box.lon_max - box.lon_min) * km_per_deg;
  const double height_km = (box.lat_max - box.lat_min) * km_per_deg;
  CHECK(width_km == doctest::Approx(1.22).epsilon(0.01));
  CHECK(height_km == doctest::Approx(0.61).epsilon(0.01));
}
