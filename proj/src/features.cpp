#include "tendency/features.hpp"

#include <algorithm>
#include <cmath>

namespace tendency {

DerivedBooking derive(const BookingRecord& record, int tz_offset_min) {
  DerivedBooking d;
  d.base = record;
  d.driver_gh = geohash_encode(record.driver_lat, record.driver_lon, 6);
  d.pickup_gh = geohash_encode(record.pickup_lat, record.pickup_lon, 6);
  d.dow = dow_class(record.accept_ts, tz_offset_min);
  d.day = day_of_week(record.accept_ts, tz_offset_min);
  d.hourgroup = hourgroup(record.accept_ts, tz_offset_min);
  d.diff_eta_ata_s = record.ata_s - record.eta_s;
  d.is_late_pickup = d.diff_eta_ata_s > 300.0 ? 1 : 0;
  return d;
}

std::vector<DerivedBooking> derive_all(const std::vector<BookingRecord>& records,
                                       int tz_offset_min) {
  std::vector<DerivedBooking> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(derive(r, tz_offset_min));
  return out;
}

// ------------------------------------------------------------- groupings

namespace {

constexpr const char* kGroupingNames[15] = {
    "driver",
    "driver_dow",
    "driver_hourgroup",
    "driverGh",
    "driverGh_dow",
    "driverGh_hourgroup",
    "pickupGh",
    "pickupGh_dow",
    "pickupGh_hourgroup",
    "driver_driverGh",
    "driver_driverGh_dow",
    "driver_driverGh_hourgroup",
    "driver_pickupGh",
    "driver_pickupGh_dow",
    "driver_pickupGh_hourgroup",
};

}  // namespace

const char* grouping_name(Grouping g) { return kGroupingNames[static_cast<int>(g)]; }

Grouping parse_grouping(const std::string& name) {
  for (int i = 0; i < 15; ++i)
    if (name == kGroupingNames[i]) return static_cast<Grouping>(i);
  throw DataError("unknown grouping scheme '" + name + "'");
}

bool grouping_uses_driver(Grouping g) {
  switch (g) {
    case Grouping::driver:
    case Grouping::driver_dow:
    case Grouping::driver_hourgroup:
    case Grouping::driver_driverGh:
    case Grouping::driver_driverGh_dow:
    case Grouping::driver_driverGh_hourgroup:
    case Grouping::driver_pickupGh:
    case Grouping::driver_pickupGh_dow:
    case Grouping::driver_pickupGh_hourgroup:
      return true;
    default:
      return false;
  }
}

bool grouping_uses_driverGh(Grouping g) {
  switch (g) {
    case Grouping::driverGh:
    case Grouping::driverGh_dow:
    case Grouping::driverGh_hourgroup:
    case Grouping::driver_driverGh:
    case Grouping::driver_driverGh_dow:
    case Grouping::driver_driverGh_hourgroup:
      return true;
    default:
      return false;
  }
}

bool grouping_uses_pickupGh(Grouping g) {
  switch (g) {
    case Grouping::pickupGh:
    case Grouping::pickupGh_dow:
    case Grouping::pickupGh_hourgroup:
    case Grouping::driver_pickupGh:
    case Grouping::driver_pickupGh_dow:
    case Grouping::driver_pickupGh_hourgroup:
      return true;
    default:
      return false;
  }
}

bool grouping_uses_dow(Grouping g) {
  switch (g) {
    case Grouping::driver_dow:
    case Grouping::driverGh_dow:
    case Grouping::pickupGh_dow:
    case Grouping::driver_driverGh_dow:
    case Grouping::driver_pickupGh_dow:
      return true;
    default:
      return false;
  }
}

bool grouping_uses_hourgroup(Grouping g) {
  switch (g) {
    case Grouping::driver_hourgroup:
    case Grouping::driverGh_hourgroup:
    case Grouping::pickupGh_hourgroup:
    case Grouping::driver_driverGh_hourgroup:
    case Grouping::driver_pickupGh_hourgroup:
      return true;
    default:
      return false;
  }
}

AggKey booking_key(const DerivedBooking& b, Grouping g) {
  AggKey key;
  if (grouping_uses_driver(g)) key.driver = b.base.driver_id;
  if (grouping_uses_driverGh(g)) key.gh = b.driver_gh.code;
  if (grouping_uses_pickupGh(g)) key.gh = b.pickup_gh.code;
  if (grouping_uses_dow(g)) key.dow = b.dow == Dow::weekend ? 1 : 0;
  if (grouping_uses_hourgroup(g)) key.hourgroup = b.hourgroup;
  return key;
}

AggregatedFeatureTable aggregate(const std::vector<DerivedBooking>& bookings, Grouping g) {
  if (bookings.empty()) throw DataError("aggregate: no bookings");
  struct Accum {
    std::size_t total = 0, late = 0;
    double diff = 0.0, start = 0.0, end = 0.0;
  };
  std::map<AggKey, Accum> acc;
  for (const auto& b : bookings) {
    Accum& a = acc[booking_key(b, g)];
    a.total += 1;
    a.late += static_cast<std::size_t>(b.is_late_pickup);
    a.diff += b.diff_eta_ata_s;
    a.start += b.base.start_ata_s;
    a.end += b.base.end_ata_s;
  }
  AggregatedFeatureTable table;
  table.grouping = g;
  for (const auto& [key, a] : acc) {
    AggRow row;
    row.total_bookings = a.total;
    row.late_count = a.late;
    const double n = static_cast<double>(a.total);
    row.avg_diff_ata_eta = a.diff / n;
    row.lpr_pct = 100.0 * static_cast<double>(a.late) / n;
    row.avg_start_ata = a.start / n;
    row.avg_end_ata = a.end / n;
    table.rows.emplace(key, row);
  }
  return table;
}

FeatureTables aggregate_all(const std::vector<DerivedBooking>& bookings) {
  FeatureTables out;
  for (Grouping g : kAllGroupings)
    out.tables[static_cast<std::size_t>(g)] = aggregate(bookings, g);
  return out;
}

// ----------------------------------------------------- performance matrix

PerformanceMatrix build_performance_matrix(const std::vector<DerivedBooking>& bookings,
                                           MatrixGrid grid, const SliceFilter& filter) {
  std::vector<const DerivedBooking*> selected;
  for (const auto& b : bookings) {
    if (filter.dow && b.dow != *filter.dow) continue;
    if (filter.hourgroup && b.hourgroup != *filter.hourgroup) continue;
    selected.push_back(&b);
  }
  if (selected.empty()) throw DataError("build_performance_matrix: no bookings");

  std::map<std::string, std::size_t> driver_idx, grid_idx;
  for (const auto* b : selected) {
    driver_idx.emplace(b->base.driver_id, 0);
    grid_idx.emplace(grid == MatrixGrid::driverGh ? b->driver_gh.code : b->pickup_gh.code, 0);
  }
  PerformanceMatrix out;
  for (auto& [id, idx] : driver_idx) {
    idx = out.driver_ids.size();
    out.driver_ids.push_back(id);
  }
  for (auto& [code, idx] : grid_idx) {
    idx = out.grid_codes.size();
    out.grid_codes.push_back(code);
  }

  struct Cell {
    std::size_t total = 0, late = 0;
  };
  std::vector<Cell> cells(out.driver_ids.size() * out.grid_codes.size());
  for (const auto* b : selected) {
    const std::size_t i = driver_idx[b->base.driver_id];
    const std::size_t j =
        grid_idx[grid == MatrixGrid::driverGh ? b->driver_gh.code : b->pickup_gh.code];
    Cell& c = cells[i * out.grid_codes.size() + j];
    c.total += 1;
    c.late += static_cast<std::size_t>(b->is_late_pickup);
  }

  Matrix m(out.driver_ids.size(), out.grid_codes.size(), -1.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const Cell& c = cells[i * m.cols + j];
      if (c.total > 0)
        m.at(i, j) = static_cast<double>(c.late) / static_cast<double>(c.total);
    }
  out.matrix.data = std::move(m);
  out.matrix.kind = RectKind::performance;
  return out;
}

// ---------------------------------------------------------- distributions

BookingHistograms booking_histograms(const std::vector<DerivedBooking>& bookings) {
  BookingHistograms h;
  for (const auto& b : bookings) {
    h.per_day[static_cast<std::size_t>(b.day)] += 1;
    h.per_hourgroup[static_cast<std::size_t>(b.hourgroup)] += 1;
  }
  return h;
}

// ----------------------------------------------------------- grid queries

std::vector<HighSpeedLateGrid> high_speed_late_grids(
    const std::vector<DerivedBooking>& bookings, double speed_kmh_min,
    std::size_t min_late, std::size_t precision) {
  struct Accum {
    std::size_t total = 0, late = 0;
    double speed_sum = 0.0;
  };
  std::map<std::string, Accum> acc;
  for (const auto& b : bookings) {
    const GeoCell cell = geohash_encode(b.base.driver_lat, b.base.driver_lon, precision);
    Accum& a = acc[cell.code];
    a.total += 1;
    a.late += static_cast<std::size_t>(b.is_late_pickup);
    a.speed_sum += booking_speed_kmh(b.base);
  }
  std::vector<HighSpeedLateGrid> out;
  for (const auto& [code, a] : acc) {
    const double avg = a.speed_sum / static_cast<double>(a.total);
    if (avg > speed_kmh_min && a.late >= min_late)
      out.push_back({code, a.total, a.late, avg});
  }
  return out;
}

}  // namespace tendency
