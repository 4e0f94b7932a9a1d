#ifndef TENDENCY_BOOKINGS_HPP
#define TENDENCY_BOOKINGS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tendency/geohash.hpp"

namespace tendency {

/// One accepted booking. Timestamps are UTC epoch seconds; start/end ATA are
/// the times to travel the first/last 50 meters of the pickup drive.
struct BookingRecord {
  std::string booking_id;
  std::string driver_id;
  std::int64_t accept_ts = 0;
  double driver_lat = 0.0, driver_lon = 0.0;
  double pickup_lat = 0.0, pickup_lon = 0.0;
  std::int64_t pickup_ts = 0;
  double eta_s = 0.0;
  double ata_s = 0.0;
  double start_ata_s = 0.0;
  double end_ata_s = 0.0;
  double dist_km = 0.0;
};

// ----------------------------------------------------------------- time

/// "YYYY-MM-DDThh:mm:ssZ" <-> UTC epoch seconds.
std::int64_t parse_iso8601(const std::string& s);
std::string format_iso8601(std::int64_t ts);

/// Local 3-hour bucket 0..7 (12am-3am is 0, ..., 9pm-12am is 7).
int hourgroup(std::int64_t ts, int tz_offset_min);

enum class Dow { weekday, weekend };
Dow dow_class(std::int64_t ts, int tz_offset_min);
/// Local day of week, 0 = Monday .. 6 = Sunday.
int day_of_week(std::int64_t ts, int tz_offset_min);

const char* dow_name(Dow d);
Dow parse_dow(const std::string& s);

// ----------------------------------------------------------------- CSV io

/// Exact column set, rejected on any header deviation:
/// booking_id,driver_id,accept_ts,driver_lat,driver_lon,pickup_lat,
/// pickup_lon,pickup_ts,eta_s,ata_s,start_ata_s,end_ata_s,dist_km
std::vector<BookingRecord> read_bookings_csv(const std::string& path);
void write_bookings_csv(const std::vector<BookingRecord>& records, const std::string& path);

// ----------------------------------------------------------- preprocessing

struct PreprocessResult {
  std::vector<BookingRecord> kept;
  std::vector<std::pair<std::string, std::size_t>> rejections;  // reason -> count

  std::size_t rejected_total() const {
    std::size_t n = 0;
    for (const auto& [_, c] : rejections) n += c;
    return n;
  }
};

/// Implied speed = dist_km / (eta_s / 3600); records are kept iff the speed
/// lies in [0, 110] km/h and every record invariant holds. Rejections are
/// tallied per reason, first failing check wins.
PreprocessResult preprocess(const std::vector<BookingRecord>& records);

double booking_speed_kmh(const BookingRecord& r);

// ------------------------------------------------------------- synthetic

struct SyntheticBookingConfig {
  std::size_t n_drivers = 300;
  std::size_t n_grids = 15;
  std::size_t n_bookings = 20000;
  double target_late_rate = 0.30;
  // log-odds effect strengths for the planted lateness model
  double w_driver_grid = 4.0;   // congestion at the driver's grid
  double w_pickup_grid = 4.0;   // congestion at the pickup grid
  double w_skill = 4.0;         // 1 - driver skill
  double hour_effect = 1.0;     // scales the per-hourgroup offset profile
  double home_share = 0.6;      // probability a booking starts at the home grid
  double pickup_near_share = 0.4;  // probability the pickup grid equals the driver grid
  double base_lat = 1.29;
  double base_lon = 103.85;
  std::int64_t start_ts = 1748736000;  // 2025-06-01T00:00:00Z
  std::int64_t span_s = 30LL * 86400;
  int tz_offset_min = 480;
};

struct SyntheticTruth {
  std::vector<std::string> driver_ids;
  std::vector<double> driver_skill;      // in [0,1], higher is better
  std::vector<std::size_t> home_grid;    // driver -> grid index
  std::vector<GeoCell> grids;            // precision-6 cells
  std::vector<double> grid_congestion;   // in [0,1], higher means more lateness
  double intercept = 0.0;                // calibrated to the target late rate
};

struct SyntheticBookings {
  std::vector<BookingRecord> records;
  SyntheticTruth truth;
};

/// Seeded corpus with planted driver-skill and grid-congestion effects.
/// Lateness odds are logistic in the planted latents; the intercept is
/// calibrated so the expected late rate matches the configured target.
SyntheticBookings gen_synthetic_bookings(const SyntheticBookingConfig& config,
                                         std::uint64_t seed);

}  // namespace tendency

#endif
