#ifndef TENDENCY_GEOHASH_HPP
#define TENDENCY_GEOHASH_HPP

#include <string>

#include "tendency/common.hpp"

namespace tendency {

/// One geohash grid cell. The code uses the standard base-32 alphabet
/// "0123456789bcdefghjkmnpqrstuvwxyz"; precision is the character count.
struct GeoCell {
  std::string code;

  std::size_t precision() const { return code.size(); }
};

struct GeoBox {
  double lat_min = 0.0, lat_max = 0.0;
  double lon_min = 0.0, lon_max = 0.0;

  double lat_center() const { return (lat_min + lat_max) / 2.0; }
  double lon_center() const { return (lon_min + lon_max) / 2.0; }
  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }
};

/// Standard geohash bit interleaving, longitude first, 5 bits per character.
/// precision must be in [1, 12]; coordinates must be in range.
GeoCell geohash_encode(double lat, double lon, std::size_t precision);

/// Exact bounding box of a cell. Rejects codes with characters outside the
/// alphabet (e.g. 'a', 'i', 'l', 'o').
GeoBox geohash_decode(const GeoCell& cell);

}  // namespace tendency

#endif
