#ifndef TENDENCY_FEATURES_HPP
#define TENDENCY_FEATURES_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tendency/bookings.hpp"
#include "tendency/matrix.hpp"

namespace tendency {

/// A booking with its derived spatio-temporal and performance fields.
/// A pickup is late iff ATA exceeds ETA by strictly more than 5 minutes.
struct DerivedBooking {
  BookingRecord base;
  GeoCell driver_gh;  // precision 6
  GeoCell pickup_gh;  // precision 6
  Dow dow = Dow::weekday;
  int day = 0;  // local day of week, 0 = Monday
  int hourgroup = 0;
  double diff_eta_ata_s = 0.0;  // ata - eta
  int is_late_pickup = 0;
};

DerivedBooking derive(const BookingRecord& record, int tz_offset_min);
std::vector<DerivedBooking> derive_all(const std::vector<BookingRecord>& records,
                                       int tz_offset_min);

/// The fifteen aggregation key schemes.
enum class Grouping {
  driver,
  driver_dow,
  driver_hourgroup,
  driverGh,
  driverGh_dow,
  driverGh_hourgroup,
  pickupGh,
  pickupGh_dow,
  pickupGh_hourgroup,
  driver_driverGh,
  driver_driverGh_dow,
  driver_driverGh_hourgroup,
  driver_pickupGh,
  driver_pickupGh_dow,
  driver_pickupGh_hourgroup,
};

constexpr std::array<Grouping, 15> kAllGroupings = {
    Grouping::driver,          Grouping::driver_dow,
    Grouping::driver_hourgroup, Grouping::driverGh,
    Grouping::driverGh_dow,    Grouping::driverGh_hourgroup,
    Grouping::pickupGh,        Grouping::pickupGh_dow,
    Grouping::pickupGh_hourgroup, Grouping::driver_driverGh,
    Grouping::driver_driverGh_dow, Grouping::driver_driverGh_hourgroup,
    Grouping::driver_pickupGh, Grouping::driver_pickupGh_dow,
    Grouping::driver_pickupGh_hourgroup,
};

const char* grouping_name(Grouping g);
Grouping parse_grouping(const std::string& name);
bool grouping_uses_driver(Grouping g);
bool grouping_uses_driverGh(Grouping g);
bool grouping_uses_pickupGh(Grouping g);
bool grouping_uses_dow(Grouping g);
bool grouping_uses_hourgroup(Grouping g);

/// Composite aggregation key; unused components are empty / -1.
struct AggKey {
  std::string driver;
  std::string gh;       // driverGh or pickupGh depending on the grouping
  int dow = -1;         // 0 weekday, 1 weekend, -1 unused
  int hourgroup = -1;   // 0..7, -1 unused

  auto operator<=>(const AggKey&) const = default;
};

struct AggRow {
  std::size_t total_bookings = 0;
  std::size_t late_count = 0;
  double avg_diff_ata_eta = 0.0;  // seconds
  double lpr_pct = 0.0;           // 100 * late / total
  double avg_start_ata = 0.0;
  double avg_end_ata = 0.0;
};

/// Per-key means and counts for one grouping. Keys with zero bookings are
/// absent, which downstream code treats differently from a zero rate.
struct AggregatedFeatureTable {
  Grouping grouping = Grouping::driver;
  std::map<AggKey, AggRow> rows;

  const AggRow* find(const AggKey& key) const {
    const auto it = rows.find(key);
    return it == rows.end() ? nullptr : &it->second;
  }
};

AggregatedFeatureTable aggregate(const std::vector<DerivedBooking>& bookings, Grouping g);
AggKey booking_key(const DerivedBooking& b, Grouping g);

/// All fifteen tables, indexed by kAllGroupings order.
struct FeatureTables {
  std::array<AggregatedFeatureTable, 15> tables;

  const AggregatedFeatureTable& of(Grouping g) const {
    return tables[static_cast<std::size_t>(g)];
  }
};
FeatureTables aggregate_all(const std::vector<DerivedBooking>& bookings);

// ----------------------------------------------------- performance matrix

enum class MatrixGrid { driverGh, pickupGh };

struct SliceFilter {
  std::optional<Dow> dow;
  std::optional<int> hourgroup;
};

struct PerformanceMatrix {
  RectRelationalMatrix matrix;          // entries lpr/100 in [0,1], or -1
  std::vector<std::string> driver_ids;  // row key map, ascending
  std::vector<std::string> grid_codes;  // column key map, ascending
};

/// Driver x grid late-pickup-rate matrix: entry is the driver's LPR in the
/// grid scaled to [0,1] where the driver has at least one booking there,
/// else the -1 sentinel. The grid axis defaults to the driver's location
/// at booking time.
PerformanceMatrix build_performance_matrix(const std::vector<DerivedBooking>& bookings,
                                           MatrixGrid grid = MatrixGrid::driverGh,
                                           const SliceFilter& filter = {});

// ---------------------------------------------------------- distributions

struct BookingHistograms {
  std::array<std::size_t, 7> per_day{};        // 0 = Monday .. 6 = Sunday
  std::array<std::size_t, 8> per_hourgroup{};
};
BookingHistograms booking_histograms(const std::vector<DerivedBooking>& bookings);

// ----------------------------------------------------------- grid queries

struct HighSpeedLateGrid {
  std::string geohash;
  std::size_t bookings = 0;
  std::size_t late_bookings = 0;
  double avg_speed_kmh = 0.0;
};

/// Driver-location grids (re-encoded at `precision`) whose mean implied
/// speed exceeds the threshold and that saw at least `min_late` late
/// pickups. Sorted by geohash.
std::vector<HighSpeedLateGrid> high_speed_late_grids(
    const std::vector<DerivedBooking>& bookings, double speed_kmh_min = 35.0,
    std::size_t min_late = 100, std::size_t precision = 7);

}  // namespace tendency

#endif
