#include "tendency/geohash.hpp"

#include <array>
#include <cstdint>

namespace tendency {

namespace {

constexpr const char* kAlphabet = "0123456789bcdefghjkmnpqrstuvwxyz";

std::array<int, 256> build_reverse() {
  std::array<int, 256> rev{};
  rev.fill(-1);
  for (int i = 0; i < 32; ++i) rev[static_cast<unsigned char>(kAlphabet[i])] = i;
  return rev;
}

const std::array<int, 256> kReverse = build_reverse();

}  // namespace

GeoCell geohash_encode(double lat, double lon, std::size_t precision) {
  if (precision < 1 || precision > 12)
    throw DataError("geohash precision " + std::to_string(precision) +
                    " out of range [1, 12]");
  if (!(lat >= -90.0 && lat <= 90.0))
    throw DataError("latitude " + std::to_string(lat) + " out of range [-90, 90]");
  if (!(lon >= -180.0 && lon <= 180.0))
    throw DataError("longitude " + std::to_string(lon) + " out of range [-180, 180]");

  double lat_lo = -90.0, lat_hi = 90.0;
  double lon_lo = -180.0, lon_hi = 180.0;
  GeoCell cell;
  cell.code.reserve(precision);
  bool even_bit = true;  // even bits encode longitude
  int digit = 0, bits = 0;
  while (cell.code.size() < precision) {
    if (even_bit) {
      const double mid = (lon_lo + lon_hi) / 2.0;
      if (lon >= mid) {
        digit = digit * 2 + 1;
        lon_lo = mid;
      } else {
        digit *= 2;
        lon_hi = mid;
      }
    } else {
      const double mid = (lat_lo + lat_hi) / 2.0;
      if (lat >= mid) {
        digit = digit * 2 + 1;
        lat_lo = mid;
      } else {
        digit *= 2;
        lat_hi = mid;
      }
    }
    even_bit = !even_bit;
    if (++bits == 5) {
      cell.code += kAlphabet[digit];
      digit = 0;
      bits = 0;
    }
  }
  return cell;
}

GeoBox geohash_decode(const GeoCell& cell) {
  if (cell.code.empty()) throw DataError("geohash code is empty");
  GeoBox box{-90.0, 90.0, -180.0, 180.0};
  bool even_bit = true;
  for (char c : cell.code) {
    const int digit = kReverse[static_cast<unsigned char>(c)];
    if (digit < 0)
      throw DataError(std::string("invalid geohash character '") + c + "' in '" +
                      cell.code + "'");
    for (int b = 4; b >= 0; --b) {
      const int bit = (digit >> b) & 1;
      if (even_bit) {
        const double mid = (box.lon_min + box.lon_max) / 2.0;
        (bit ? box.lon_min : box.lon_max) = mid;
      } else {
        const double mid = (box.lat_min + box.lat_max) / 2.0;
        (bit ? box.lat_min : box.lat_max) = mid;
      }
      even_bit = !even_bit;
    }
  }
  return box;
}

}  // namespace tendency
