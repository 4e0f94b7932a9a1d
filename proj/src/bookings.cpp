#include "tendency/bookings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tendency/matrix.hpp"
#include "tendency/rng.hpp"

namespace tendency {

// --------------------------------------------------------------------- time

namespace {

// Howard Hinnant's civil-date algorithms
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  y = static_cast<int>(yy + (m <= 2));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& s) {
  int y, mo, d, h, mi, se;
  char tsep, z;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c", &y, &mo, &d, &tsep, &h, &mi,
                  &se, &z) != 8 ||
      tsep != 'T' || z != 'Z' || s.size() != 20)
    throw DataError("invalid timestamp '" + s + "', expected YYYY-MM-DDThh:mm:ssZ");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
      se < 0 || se > 60)
    throw DataError("timestamp field out of range in '" + s + "'");
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_iso8601(std::int64_t ts) {
  const std::int64_t days = floor_div(ts, 86400);
  std::int64_t rem = ts - days * 86400;
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", y, m, d,
                static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

int hourgroup(std::int64_t ts, int tz_offset_min) {
  const std::int64_t local = ts + static_cast<std::int64_t>(tz_offset_min) * 60;
  const std::int64_t days = floor_div(local, 86400);
  const std::int64_t hour = (local - days * 86400) / 3600;
  return static_cast<int>(hour / 3);
}

int day_of_week(std::int64_t ts, int tz_offset_min) {
  const std::int64_t local = ts + static_cast<std::int64_t>(tz_offset_min) * 60;
  const std::int64_t days = floor_div(local, 86400);
  // 1970-01-01 was a Thursday
  return static_cast<int>(((days % 7) + 7 + 3) % 7);
}

Dow dow_class(std::int64_t ts, int tz_offset_min) {
  return day_of_week(ts, tz_offset_min) >= 5 ? Dow::weekend : Dow::weekday;
}

const char* dow_name(Dow d) { return d == Dow::weekend ? "weekend" : "weekday"; }

Dow parse_dow(const std::string& s) {
  if (s == "weekday") return Dow::weekday;
  if (s == "weekend") return Dow::weekend;
  throw DataError("invalid day-of-week class '" + s + "', expected weekday|weekend");
}

// ------------------------------------------------------------------- CSV io

namespace {

constexpr const char* kBookingsHeader =
    "booking_id,driver_id,accept_ts,driver_lat,driver_lon,pickup_lat,pickup_lon,"
    "pickup_ts,eta_s,ata_s,start_ata_s,end_ata_s,dist_km";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double field_double(const std::string& tok, const std::string& path, std::size_t line,
                    const char* name) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(line) + ": invalid " + name + " '" +
                    tok + "'");
  }
}

}  // namespace

std::vector<BookingRecord> read_bookings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ":1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBookingsHeader)
    throw DataError(path + ":1: unexpected header, expected '" +
                    std::string(kBookingsHeader) + "'");

  std::vector<BookingRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 13)
      throw DataError(path + ":" + std::to_string(lineno) + ": expected 13 fields, got " +
                      std::to_string(f.size()));
    BookingRecord r;
    r.booking_id = f[0];
    r.driver_id = f[1];
    try {
      r.accept_ts = parse_iso8601(f[2]);
      r.pickup_ts = parse_iso8601(f[7]);
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    r.driver_lat = field_double(f[3], path, lineno, "driver_lat");
    r.driver_lon = field_double(f[4], path, lineno, "driver_lon");
    r.pickup_lat = field_double(f[5], path, lineno, "pickup_lat");
    r.pickup_lon = field_double(f[6], path, lineno, "pickup_lon");
    r.eta_s = field_double(f[8], path, lineno, "eta_s");
    r.ata_s = field_double(f[9], path, lineno, "ata_s");
    r.start_ata_s = field_double(f[10], path, lineno, "start_ata_s");
    r.end_ata_s = field_double(f[11], path, lineno, "end_ata_s");
    r.dist_km = field_double(f[12], path, lineno, "dist_km");
    records.push_back(std::move(r));
  }
  return records;
}

void write_bookings_csv(const std::vector<BookingRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out << kBookingsHeader << '\n';
  for (const auto& r : records) {
    out << r.booking_id << ',' << r.driver_id << ',' << format_iso8601(r.accept_ts) << ','
        << format_double(r.driver_lat) << ',' << format_double(r.driver_lon) << ','
        << format_double(r.pickup_lat) << ',' << format_double(r.pickup_lon) << ','
        << format_iso8601(r.pickup_ts) << ',' << format_double(r.eta_s) << ','
        << format_double(r.ata_s) << ',' << format_double(r.start_ata_s) << ','
        << format_double(r.end_ata_s) << ',' << format_double(r.dist_km) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

// ----------------------------------------------------------- preprocessing

double booking_speed_kmh(const BookingRecord& r) {
  return r.dist_km / (r.eta_s / 3600.0);
}

PreprocessResult preprocess(const std::vector<BookingRecord>& records) {
  PreprocessResult res;
  auto reject = [&](const std::string& reason) {
    for (auto& [name, count] : res.rejections)
      if (name == reason) {
        ++count;
        return;
      }
    res.rejections.emplace_back(reason, 1);
  };

  for (const auto& r : records) {
    if (!(r.eta_s > 0.0)) {
      reject("nonpositive ETA");
    } else if (!(r.driver_lat >= -90.0 && r.driver_lat <= 90.0 &&
                 r.pickup_lat >= -90.0 && r.pickup_lat <= 90.0 &&
                 r.driver_lon >= -180.0 && r.driver_lon <= 180.0 &&
                 r.pickup_lon >= -180.0 && r.pickup_lon <= 180.0)) {
      reject("coordinates out of range");
    } else if (!(r.ata_s >= 0.0)) {
      reject("negative ATA");
    } else if (r.pickup_ts < r.accept_ts) {
      reject("pickup before accept");
    } else if (!(r.dist_km >= 0.0) || !std::isfinite(r.dist_km)) {
      reject("invalid distance");
    } else {
      const double speed = booking_speed_kmh(r);
      if (speed >= 0.0 && speed <= 110.0)
        res.kept.push_back(r);
      else
        reject("speed out of range");
    }
  }
  std::sort(res.rejections.begin(), res.rejections.end());
  return res;
}

// --------------------------------------------------------------- synthetic

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0;
  const double to_rad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * to_rad;
  const double dlon = (lon2 - lon1) * to_rad;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * to_rad) * std::cos(lat2 * to_rad) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

// mean-zero hourgroup offset profile (morning/evening peaks late-prone)
constexpr double kHourProfile[8] = {-0.9, -1.1, 0.8, 0.5, -0.3, 0.4, 1.0, -0.4};

}  // namespace

SyntheticBookings gen_synthetic_bookings(const SyntheticBookingConfig& cfg,
                                         std::uint64_t seed) {
  if (cfg.n_drivers == 0 || cfg.n_grids == 0 || cfg.n_bookings == 0)
    throw DataError("gen_synthetic_bookings: counts must be positive");
  if (!(cfg.target_late_rate > 0.0 && cfg.target_late_rate < 1.0))
    throw DataError("gen_synthetic_bookings: target late rate must be in (0, 1)");

  Rng rng(seed);
  SyntheticBookings out;
  SyntheticTruth& truth = out.truth;

  // grids: one geohash-6 cell per lattice point, two cells apart so codes
  // are distinct and interior points stay inside their cell
  const std::size_t side = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(cfg.n_grids))));
  const double lat_step = 2.0 * 180.0 / (1 << 15);  // two precision-6 cells
  const double lon_step = 2.0 * 360.0 / (1 << 15);
  for (std::size_t g = 0; g < cfg.n_grids; ++g) {
    const double lat = cfg.base_lat + static_cast<double>(g / side) * lat_step;
    const double lon = cfg.base_lon + static_cast<double>(g % side) * lon_step;
    const GeoCell cell = geohash_encode(lat, lon, 6);
    truth.grids.push_back(cell);
    truth.grid_congestion.push_back(rng.uniform());
  }

  for (std::size_t d = 0; d < cfg.n_drivers; ++d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "d%05zu", d);
    truth.driver_ids.emplace_back(buf);
    truth.driver_skill.push_back(rng.uniform());
    truth.home_grid.push_back(static_cast<std::size_t>(rng.uniform_int(cfg.n_grids)));
  }

  // draw the per-booking structure first so the intercept can be calibrated
  // against the exact realized effect terms
  struct Draft {
    std::size_t driver, g1, g2;
    std::int64_t accept_ts;
    int hg;
    double effect;
  };
  std::vector<Draft> drafts;
  drafts.reserve(cfg.n_bookings);
  for (std::size_t b = 0; b < cfg.n_bookings; ++b) {
    Draft dr;
    dr.driver = static_cast<std::size_t>(rng.uniform_int(cfg.n_drivers));
    dr.g1 = rng.uniform() < cfg.home_share
                ? truth.home_grid[dr.driver]
                : static_cast<std::size_t>(rng.uniform_int(cfg.n_grids));
    dr.g2 = rng.uniform() < cfg.pickup_near_share
                ? dr.g1
                : static_cast<std::size_t>(rng.uniform_int(cfg.n_grids));
    dr.accept_ts = cfg.start_ts + static_cast<std::int64_t>(rng.uniform_int(
                                      static_cast<std::uint64_t>(cfg.span_s)));
    dr.hg = hourgroup(dr.accept_ts, cfg.tz_offset_min);
    dr.effect = cfg.w_driver_grid * (truth.grid_congestion[dr.g1] - 0.5) +
                cfg.w_pickup_grid * (truth.grid_congestion[dr.g2] - 0.5) +
                cfg.w_skill * (0.5 - truth.driver_skill[dr.driver]) +
                cfg.hour_effect * kHourProfile[dr.hg];
    drafts.push_back(dr);
  }

  // bisect the intercept so the mean lateness probability hits the target
  double lo = -30.0, hi = 30.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2.0;
    double mean = 0.0;
    for (const Draft& dr : drafts) mean += sigmoid(mid + dr.effect);
    mean /= static_cast<double>(drafts.size());
    (mean < cfg.target_late_rate ? lo : hi) = mid;
  }
  truth.intercept = (lo + hi) / 2.0;

  out.records.reserve(cfg.n_bookings);
  for (std::size_t b = 0; b < cfg.n_bookings; ++b) {
    const Draft& dr = drafts[b];
    BookingRecord r;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "b%07zu", b);
    r.booking_id = buf;
    r.driver_id = truth.driver_ids[dr.driver];
    r.accept_ts = dr.accept_ts;

    const GeoBox box1 = geohash_decode(truth.grids[dr.g1]);
    const GeoBox box2 = geohash_decode(truth.grids[dr.g2]);
    r.driver_lat = rng.uniform(box1.lat_min, box1.lat_max);
    r.driver_lon = rng.uniform(box1.lon_min, box1.lon_max);
    r.pickup_lat = rng.uniform(box2.lat_min, box2.lat_max);
    r.pickup_lon = rng.uniform(box2.lon_min, box2.lon_max);

    const double road_factor = 1.3;
    r.dist_km = std::max(
        0.2, haversine_km(r.driver_lat, r.driver_lon, r.pickup_lat, r.pickup_lon) *
                 road_factor);
    const double speed_kmh = rng.uniform(18.0, 55.0);
    r.eta_s = std::max(30.0, r.dist_km / speed_kmh * 3600.0);
    // keep the implied dist/ETA speed inside the preprocessing window
    r.dist_km = r.eta_s * speed_kmh / 3600.0;

    const double p_late = sigmoid(truth.intercept + dr.effect);
    const bool late = rng.uniform() < p_late;
    const double diff =
        late ? 301.0 + std::min(1500.0, rng.exponential(240.0)) : rng.uniform(-180.0, 300.0);
    r.ata_s = std::max(0.0, r.eta_s + diff);
    r.pickup_ts = r.accept_ts + static_cast<std::int64_t>(std::llround(r.ata_s));

    const double c1 = truth.grid_congestion[dr.g1];
    const double c2 = truth.grid_congestion[dr.g2];
    r.start_ata_s = std::max(1.0, 15.0 + 90.0 * c1 + rng.normal(0.0, 8.0));
    r.end_ata_s = std::max(1.0, 15.0 + 90.0 * c2 + rng.normal(0.0, 8.0));
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace tendency
