#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include "tendency/bookings.hpp"
#include "tendency/features.hpp"

using namespace tendency;
namespace fs = std::filesystem;

namespace {

BookingRecord sample_record() {
  BookingRecord r;
  r.booking_id = "b1";
  r.driver_id = "d1";
  r.accept_ts = parse_iso8601("2025-06-03T05:45:00Z");  // 13:45 at UTC+8
  r.driver_lat = 1.30;
  r.driver_lon = 103.8;
  r.pickup_lat = 1.31;
  r.pickup_lon = 103.82;
  r.eta_s = 600.0;
  r.ata_s = 700.0;
  r.start_ata_s = 20.0;
  r.end_ata_s = 30.0;
  r.dist_km = 10.0;
  r.pickup_ts = r.accept_ts + 700;
  return r;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("tendency_bk_" + name)).string();
}

}  // namespace

TEST_CASE("iso8601 parse and format round trip") {
  for (const char* s : {"1970-01-01T00:00:00Z", "2025-06-01T00:00:00Z",
                        "2026-12-31T23:59:59Z", "2000-02-29T12:30:45Z"}) {
    const std::int64_t ts = parse_iso8601(s);
    CHECK(format_iso8601(ts) == s);
  }
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("1970-01-02T00:00:00Z") == 86400);
}

TEST_CASE("malformed timestamps are rejected") {
  CHECK_THROWS_AS(parse_iso8601("2025-06-01 00:00:00Z"), DataError);
  CHECK_THROWS_AS(parse_iso8601("2025-06-01T00:00:00"), DataError);
  CHECK_THROWS_AS(parse_iso8601("2025-13-01T00:00:00Z"), DataError);
  CHECK_THROWS_AS(parse_iso8601("garbage"), DataError);
}

TEST_CASE("hourgroup buckets local time into eight groups") {
  // 05:45 UTC = 13:45 at +480 -> group 4 (12pm-3pm)
  CHECK(hourgroup(parse_iso8601("2025-06-03T05:45:00Z"), 480) == 4);
  // midnight local -> group 0
  CHECK(hourgroup(parse_iso8601("2025-06-02T16:00:00Z"), 480) == 0);
  // 23:59 local -> group 7
  CHECK(hourgroup(parse_iso8601("2025-06-03T15:59:00Z"), 480) == 7);
  // no offset
  CHECK(hourgroup(parse_iso8601("2025-06-03T00:00:00Z"), 0) == 0);
  CHECK(hourgroup(parse_iso8601("2025-06-03T23:59:59Z"), 0) == 7);
}

TEST_CASE("every minute of the day maps to exactly one hourgroup") {
  const std::int64_t midnight = parse_iso8601("2025-06-02T00:00:00Z");
  std::array<std::size_t, 8> counts{};
  for (int minute = 0; minute < 24 * 60; ++minute) {
    const int hg = hourgroup(midnight + minute * 60, 0);
    REQUIRE(hg >= 0);
    REQUIRE(hg <= 7);
    counts[static_cast<std::size_t>(hg)] += 1;
  }
  for (std::size_t c : counts) CHECK(c == 3 * 60);
}

TEST_CASE("weekday and weekend classification") {
  // 2025-06-01 was a Sunday, 2025-06-02 a Monday
  CHECK(dow_class(parse_iso8601("2025-06-01T10:00:00Z"), 0) == Dow::weekend);
  CHECK(dow_class(parse_iso8601("2025-06-02T10:00:00Z"), 0) == Dow::weekday);
  CHECK(dow_class(parse_iso8601("2025-06-07T10:00:00Z"), 0) == Dow::weekend);
  CHECK(day_of_week(parse_iso8601("2025-06-02T10:00:00Z"), 0) == 0);
  // offset moves 23:00 UTC Friday into Saturday local
  CHECK(dow_class(parse_iso8601("2025-06-06T23:00:00Z"), 480) == Dow::weekend);
}

TEST_CASE("preprocess keeps mid-range speeds") {
  BookingRecord r = sample_record();  // 10 km in 600 s -> 60 km/h
  const PreprocessResult res = preprocess({r});
  CHECK(res.kept.size() == 1);
  CHECK(res.rejections.empty());
}

TEST_CASE("preprocess rejects highway-impossible speeds") {
  BookingRecord r = sample_record();
  r.dist_km = 40.0;  // 240 km/h
  const PreprocessResult res = preprocess({r});
  CHECK(res.kept.empty());
  REQUIRE(res.rejections.size() == 1);
  CHECK(res.rejections[0].first == "speed out of range");
}

TEST_CASE("preprocess rejects nonpositive ETA with its own reason") {
  BookingRecord r = sample_record();
  r.eta_s = 0.0;
  const PreprocessResult res = preprocess({r});
  REQUIRE(res.rejections.size() == 1);
  CHECK(res.rejections[0].first == "nonpositive ETA");
}

TEST_CASE("preprocess counts reconcile") {
  std::vector<BookingRecord> records;
  for (int i = 0; i < 10; ++i) records.push_back(sample_record());
  records[1].eta_s = -5.0;
  records[3].dist_km = 100.0;  // 600 km/h
  records[5].driver_lat = 95.0;
  records[7].ata_s = -1.0;
  records[8].pickup_ts = records[8].accept_ts - 10;
  const PreprocessResult res = preprocess(records);
  CHECK(res.kept.size() + res.rejected_total() == records.size());
  CHECK(res.kept.size() == 5);
}

TEST_CASE("bookings csv round trip") {
  std::vector<BookingRecord> records{sample_record(), sample_record()};
  records[1].booking_id = "b2";
  records[1].eta_s = 123.456;
  const std::string path = temp_path("roundtrip.csv");
  write_bookings_csv(records, path);
  const std::vector<BookingRecord> back = read_bookings_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].booking_id == "b1");
  CHECK(back[1].eta_s == 123.456);
  CHECK(back[0].accept_ts == records[0].accept_ts);
  CHECK(back[0].dist_km == records[0].dist_km);
  fs::remove(path);
}

TEST_CASE("unexpected csv header is rejected") {
  const std::string path = temp_path("bad_header.csv");
  std::ofstream(path) << "booking_id,driver_id,extra\nx,y,z\n";
  CHECK_THROWS_WITH_AS(read_bookings_csv(path), doctest::Contains(":1"), DataError);
  fs::remove(path);
}

TEST_CASE("bad field values are reported with their line") {
  const std::string path = temp_path("bad_field.csv");
  write_bookings_csv({sample_record()}, path);
  std::ofstream(path, std::ios::app)
      << "b9,d9,2025-06-01T00:00:00Z,oops,103.8,1.3,103.8,2025-06-01T00:10:00Z,"
         "600,650,20,30,5\n";
  CHECK_THROWS_WITH_AS(read_bookings_csv(path), doctest::Contains(":3"), DataError);
  fs::remove(path);
}

TEST_CASE("synthetic corpus is seed-deterministic") {
  SyntheticBookingConfig cfg;
  cfg.n_drivers = 30;
  cfg.n_grids = 6;
  cfg.n_bookings = 500;
  const SyntheticBookings a = gen_synthetic_bookings(cfg, 5);
  const SyntheticBookings b = gen_synthetic_bookings(cfg, 5);
  REQUIRE(a.records.size() == 500);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].booking_id == b.records[i].booking_id);
    CHECK(a.records[i].ata_s == b.records[i].ata_s);
    CHECK(a.records[i].driver_lat == b.records[i].driver_lat);
  }
}

TEST_CASE("synthetic corpus hits the configured late rate") {
  SyntheticBookingConfig cfg;
  cfg.n_drivers = 100;
  cfg.n_grids = 10;
  cfg.n_bookings = 8000;
  cfg.target_late_rate = 0.30;
  const SyntheticBookings data = gen_synthetic_bookings(cfg, 7);
  std::size_t late = 0;
  for (const auto& r : data.records)
    if (r.ata_s - r.eta_s > 300.0) ++late;
  const double rate = static_cast<double>(late) / static_cast<double>(data.records.size());
  CHECK(std::abs(rate - 0.30) < 0.02);
}

TEST_CASE("synthetic bookings all pass preprocessing") {
  SyntheticBookingConfig cfg;
  cfg.n_drivers = 40;
  cfg.n_grids = 8;
  cfg.n_bookings = 2000;
  const SyntheticBookings data = gen_synthetic_bookings(cfg, 3);
  const PreprocessResult res = preprocess(data.records);
  CHECK(res.kept.size() == data.records.size());
}

TEST_CASE("high-skill drivers are late less often than low-skill drivers") {
  SyntheticBookingConfig cfg;
  cfg.n_drivers = 100;
  cfg.n_grids = 10;
  cfg.n_bookings = 20000;
  const SyntheticBookings data = gen_synthetic_bookings(cfg, 11);

  std::map<std::string, std::pair<std::size_t, std::size_t>> per_driver;  // late, total
  for (const auto& r : data.records) {
    auto& [late, total] = per_driver[r.driver_id];
    total += 1;
    if (r.ata_s - r.eta_s > 300.0) late += 1;
  }
  // split drivers into skill deciles and compare the extremes
  std::vector<std::size_t> by_skill(cfg.n_drivers);
  std::iota(by_skill.begin(), by_skill.end(), 0);
  std::sort(by_skill.begin(), by_skill.end(), [&](std::size_t a, std::size_t b) {
    return data.truth.driver_skill[a] > data.truth.driver_skill[b];
  });
  auto decile_lpr = [&](std::size_t from, std::size_t count) {
    double late = 0.0, total = 0.0;
    for (std::size_t i = from; i < from + count; ++i) {
      const auto& [l, t] = per_driver[data.truth.driver_ids[by_skill[i]]];
      late += static_cast<double>(l);
      total += static_cast<double>(t);
    }
    return late / total;
  };
  const std::size_t decile = cfg.n_drivers / 10;
  CHECK(decile_lpr(0, decile) < decile_lpr(cfg.n_drivers - decile, decile));
}

TEST_CASE("synthetic grid cells are distinct precision-6 geohashes") {
  SyntheticBookingConfig cfg;
  cfg.n_grids = 20;
  cfg.n_bookings = 10;
  cfg.n_drivers = 5;
  const SyntheticBookings data = gen_synthetic_bookings(cfg, 2);
  std::set<std::string> codes;
  for (const auto& cell : data.truth.grids) {
    CHECK(cell.precision() == 6);
    codes.insert(cell.code);
  }
  CHECK(codes.size() == 20);
}

TEST_CASE("derived driver geohash matches the planted grid") {
  SyntheticBookingConfig cfg;
  cfg.n_drivers = 10;
  cfg.n_grids = 5;
  cfg.n_bookings = 200;
  const SyntheticBookings data = gen_synthetic_bookings(cfg, 4);
  std::set<std::string> grid_codes;
  for (const auto& cell : data.truth.grids) grid_codes.insert(cell.code);
  for (const auto& r : data.records) {
    const DerivedBooking d = derive(r, cfg.tz_offset_min);
    CHECK(grid_codes.count(d.driver_gh.code) == 1);
    CHECK(grid_codes.count(d.pickup_gh.code) == 1);
  }
}
