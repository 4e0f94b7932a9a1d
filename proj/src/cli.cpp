#include "tendency/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "tendency/coclust.hpp"
#include "tendency/generators.hpp"
#include "tendency/imaging.hpp"
#include "tendency/matrix_io.hpp"
#include "tendency/prediction.hpp"
#include "tendency/scoring.hpp"

namespace fs = std::filesystem;

namespace tendency {

namespace {

// ------------------------------------------------------------ run records

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot hash file: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

/// Run record written next to every subcommand's outputs: one key=value per
/// line, flags first, then an fnv64 hash of each artifact.
class Manifest {
 public:
  explicit Manifest(std::string out_dir) : dir_(std::move(out_dir)) {
    fs::create_directories(dir_);
  }

  const std::string& dir() const { return dir_; }
  std::string path(const std::string& name) const { return dir_ + "/" + name; }

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }
  void set(const std::string& key, std::uint64_t value) {
    entries_[key] = std::to_string(value);
  }

  void artifact(const std::string& name) { artifacts_.push_back(name); }

  void write() {
    std::ofstream out(path("manifest.txt"));
    if (!out) throw DataError("cannot write manifest in " + dir_);
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
    std::sort(artifacts_.begin(), artifacts_.end());
    for (const auto& name : artifacts_) {
      char hex[17];
      std::snprintf(hex, sizeof(hex), "%016llx",
                    static_cast<unsigned long long>(fnv1a64_file(path(name))));
      out << "hash." << name << '=' << hex << '\n';
    }
  }

 private:
  std::string dir_;
  std::map<std::string, std::string> entries_;
  std::vector<std::string> artifacts_;
};

std::string csv_num(double v) { return format_double(v); }

// -------------------------------------------------------------------- gen

struct GenArgs {
  std::string kind;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t m = 0, n = 0, k = 0;
  bool contiguous = false;
  std::size_t drivers = 300, grids = 15, bookings = 20000;
  double late_rate = 0.30;
};

int cmd_gen(const GenArgs& a) {
  Manifest mf(a.out);
  mf.set("subcommand", "gen");
  mf.set("kind", a.kind);
  mf.set("seed", a.seed);

  if (a.kind == "example1") {
    Example1Config cfg;
    if (a.m > 0) cfg.rows = a.m;
    if (a.n > 0) cfg.cols = a.n;
    const Example1Data data = gen_example1(a.seed, cfg);
    write_matrix(data.matrix.data, mf.path("matrix.txt"));
    write_labels(data.row_labels, mf.path("row_labels.txt"));
    write_labels(data.col_labels, mf.path("col_labels.txt"));
    mf.artifact("matrix.txt");
    mf.artifact("row_labels.txt");
    mf.artifact("col_labels.txt");
  } else if (a.kind == "example2") {
    Example2Config cfg;
    if (a.m > 0) cfg.rows = a.m;
    if (a.n > 0) cfg.cols = a.n;
    cfg.contiguous_blocks = a.contiguous;
    const Example2Data data = gen_example2(a.seed, cfg);
    write_matrix(data.matrix.data, mf.path("matrix.txt"));
    mf.artifact("matrix.txt");
    for (std::size_t b = 0; b < data.blocks.size(); ++b) {
      const std::string rows_name = "block" + std::to_string(b + 1) + "_rows.txt";
      const std::string cols_name = "block" + std::to_string(b + 1) + "_cols.txt";
      write_index_list(data.blocks[b].row_indices, mf.path(rows_name));
      write_index_list(data.blocks[b].col_indices, mf.path(cols_name));
      mf.artifact(rows_name);
      mf.artifact(cols_name);
    }
  } else if (a.kind == "gaussian2d") {
    const std::size_t total = a.n > 0 ? a.n : 5000;
    const std::size_t k = a.k > 0 ? a.k : 5;
    const FeatureMatrix data = gen_gaussian2d(total, k, a.seed);
    write_matrix(data.data, mf.path("features.txt"));
    write_labels(*data.ground_truth_labels, mf.path("labels.txt"));
    mf.artifact("features.txt");
    mf.artifact("labels.txt");
  } else if (a.kind == "bookings") {
    SyntheticBookingConfig cfg;
    cfg.n_drivers = a.drivers;
    cfg.n_grids = a.grids;
    cfg.n_bookings = a.bookings;
    cfg.target_late_rate = a.late_rate;
    const SyntheticBookings data = gen_synthetic_bookings(cfg, a.seed);
    write_bookings_csv(data.records, mf.path("bookings.csv"));
    mf.artifact("bookings.csv");
    {
      std::ofstream out(mf.path("truth_drivers.csv"));
      out << "driver_id,skill,home_geohash\n";
      for (std::size_t d = 0; d < data.truth.driver_ids.size(); ++d)
        out << data.truth.driver_ids[d] << ',' << csv_num(data.truth.driver_skill[d])
            << ',' << data.truth.grids[data.truth.home_grid[d]].code << '\n';
      mf.artifact("truth_drivers.csv");
    }
    {
      std::ofstream out(mf.path("truth_grids.csv"));
      out << "geohash,congestion\n";
      for (std::size_t g = 0; g < data.truth.grids.size(); ++g)
        out << data.truth.grids[g].code << ',' << csv_num(data.truth.grid_congestion[g])
            << '\n';
      mf.artifact("truth_grids.csv");
    }
  } else {
    throw DataError("unknown --kind '" + a.kind +
                    "', expected example1|example2|gaussian2d|bookings");
  }
  mf.write();
  return 0;
}

// ------------------------------------------------------------------- ivat

int cmd_ivat(const std::string& in, const std::string& out, std::size_t krows,
             std::size_t max_k) {
  Manifest mf(out);
  mf.set("subcommand", "ivat");
  mf.set("input.matrix", in);
  mf.set("krows", static_cast<std::uint64_t>(krows));

  const DissimilarityMatrix d = make_dissimilarity(read_matrix(in));
  const VatResult vat = vat_reorder(d);
  const Matrix rdi = ivat_of_ordered(vat.reordered.data);

  write_index_list(vat.ordering.permutation, mf.path("ordering.txt"));
  mf.artifact("ordering.txt");
  {
    // transform reported in input order
    Matrix ivat(d.size(), d.size());
    for (std::size_t a = 0; a < d.size(); ++a)
      for (std::size_t b = 0; b < d.size(); ++b)
        ivat.at(vat.ordering.permutation[a], vat.ordering.permutation[b]) = rdi.at(a, b);
    write_matrix(ivat, mf.path("ivat.txt"));
    mf.artifact("ivat.txt");
  }
  write_pnm(render_grayscale(rdi), mf.path("rdi.pgm"));
  mf.artifact("rdi.pgm");

  const std::size_t suggested = suggest_k(vat.ordering, max_k);
  mf.set("suggested_k", static_cast<std::uint64_t>(suggested));
  log_info("suggested k = " + std::to_string(suggested));
  if (krows > 0) {
    write_labels(cut_clusters(vat.ordering, krows), mf.path("labels.txt"));
    mf.artifact("labels.txt");
  }
  mf.write();
  return 0;
}

// ---------------------------------------------------------------- scoivat

int cmd_scoivat(const std::string& in, const std::string& out, const CoClusterOptions& opts,
                double tau, bool tau_given, bool performance) {
  Manifest mf(out);
  mf.set("subcommand", "scoivat");
  mf.set("input.matrix", in);
  mf.set("seed", opts.seed);
  mf.set("m", static_cast<std::uint64_t>(opts.row_samples));
  mf.set("n", static_cast<std::uint64_t>(opts.col_samples));
  mf.set("kprime", static_cast<std::uint64_t>(opts.k_prime));
  mf.set("krows", static_cast<std::uint64_t>(opts.k_rows));
  mf.set("kcols", static_cast<std::uint64_t>(opts.k_cols));

  const RectRelationalMatrix rect = make_rect(
      read_matrix(in), performance ? RectKind::performance : RectKind::generic);
  const CoClusterResult result = sco_ivat(rect, opts);
  const double tau_used = tau_given ? tau : default_cocluster_tau(result);
  mf.set("tau", format_double(tau_used));

  write_matrix(result.reordered.data, mf.path("reordered.txt"));
  write_index_list(result.row_perm, mf.path("rp.txt"));
  write_index_list(result.col_perm, mf.path("cp.txt"));
  write_labels(result.row_labels, mf.path("row_labels.txt"));
  write_labels(result.col_labels, mf.path("col_labels.txt"));
  write_pnm(render_grayscale(result.row_rdi.data), mf.path("row_rdi.pgm"));
  write_pnm(render_grayscale(result.col_rdi.data), mf.path("col_rdi.pgm"));
  for (const char* name : {"reordered.txt", "rp.txt", "cp.txt", "row_labels.txt",
                           "col_labels.txt", "row_rdi.pgm", "col_rdi.pgm"})
    mf.artifact(name);

  if (performance) {
    write_pnm(render_performance(result.reordered.data), mf.path("rri.ppm"));
    mf.artifact("rri.ppm");
  } else {
    write_pnm(render_grayscale(result.reordered.data), mf.path("rri.pgm"));
    mf.artifact("rri.pgm");
  }

  {
    std::ofstream blocks(mf.path("blocks.csv"));
    blocks << "row_cluster,col_cluster,rows,cols,block_mean,global_mean,flagged\n";
    for (const CoClusterBlock& b : extract_coclusters(result, tau_used)) {
      blocks << b.row_cluster << ',' << b.col_cluster << ',' << b.row_begin << '-'
             << (b.row_end - 1) << ',' << b.col_begin << '-' << (b.col_end - 1) << ','
             << (b.undefined_mean ? "nan" : csv_num(b.block_mean)) << ','
             << csv_num(b.global_mean) << ',' << (b.flagged ? 1 : 0) << '\n';
    }
    mf.artifact("blocks.csv");
  }
  mf.write();
  return 0;
}

// -------------------------------------------------------------- aggregate

void write_table_csv(const AggregatedFeatureTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  const Grouping g = table.grouping;
  std::vector<std::string> cols;
  if (grouping_uses_driver(g)) cols.push_back("driver_id");
  if (grouping_uses_driverGh(g)) cols.push_back("driverGh");
  if (grouping_uses_pickupGh(g)) cols.push_back("pickupGh");
  if (grouping_uses_dow(g)) cols.push_back("dow");
  if (grouping_uses_hourgroup(g)) cols.push_back("hourgroup");
  for (const char* m : {"total_bookings", "avg_diff_ata_eta", "lpr_pct", "avg_start_ata",
                        "avg_end_ata"})
    cols.push_back(m);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& [key, row] : table.rows) {
    std::vector<std::string> vals;
    if (grouping_uses_driver(g)) vals.push_back(key.driver);
    if (grouping_uses_driverGh(g) || grouping_uses_pickupGh(g)) vals.push_back(key.gh);
    if (grouping_uses_dow(g)) vals.push_back(key.dow == 1 ? "weekend" : "weekday");
    if (grouping_uses_hourgroup(g)) vals.push_back(std::to_string(key.hourgroup));
    vals.push_back(std::to_string(row.total_bookings));
    vals.push_back(csv_num(row.avg_diff_ata_eta));
    vals.push_back(csv_num(row.lpr_pct));
    vals.push_back(csv_num(row.avg_start_ata));
    vals.push_back(csv_num(row.avg_end_ata));
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << vals[i];
    out << '\n';
  }
}

struct AggregateArgs {
  std::string in, out;
  int tz_offset_min = 480;
  std::size_t precision = 7;
  double speed_min = 35.0;
  std::size_t min_late = 100;
};

int cmd_aggregate(const AggregateArgs& a) {
  Manifest mf(a.out);
  mf.set("subcommand", "aggregate");
  mf.set("input.bookings", a.in);
  mf.set("tz_offset_min", static_cast<std::uint64_t>(a.tz_offset_min));
  mf.set("precision", static_cast<std::uint64_t>(a.precision));

  const PreprocessResult pre = preprocess(read_bookings_csv(a.in));
  {
    std::ofstream out(mf.path("rejects.csv"));
    out << "reason,count\n";
    for (const auto& [reason, count] : pre.rejections) out << reason << ',' << count << '\n';
    mf.artifact("rejects.csv");
  }
  if (pre.kept.empty()) throw DataError("no bookings left after preprocessing");
  const std::vector<DerivedBooking> derived = derive_all(pre.kept, a.tz_offset_min);

  for (Grouping g : kAllGroupings) {
    const std::string name = std::string("agg_") + grouping_name(g) + ".csv";
    write_table_csv(aggregate(derived, g), mf.path(name));
    mf.artifact(name);
  }

  const PerformanceMatrix perf = build_performance_matrix(derived);
  write_matrix(perf.matrix.data, mf.path("perf_matrix.txt"));
  write_lines(perf.driver_ids, mf.path("perf_rows.txt"));
  write_lines(perf.grid_codes, mf.path("perf_cols.txt"));
  mf.artifact("perf_matrix.txt");
  mf.artifact("perf_rows.txt");
  mf.artifact("perf_cols.txt");

  const BookingHistograms hist = booking_histograms(derived);
  {
    std::ofstream out(mf.path("hist_day.csv"));
    out << "day,count\n";
    static const char* names[7] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
    for (int d = 0; d < 7; ++d) out << names[d] << ',' << hist.per_day[d] << '\n';
    mf.artifact("hist_day.csv");
  }
  {
    std::ofstream out(mf.path("hist_hourgroup.csv"));
    out << "hourgroup,count\n";
    for (int h = 0; h < 8; ++h) out << h << ',' << hist.per_hourgroup[h] << '\n';
    mf.artifact("hist_hourgroup.csv");
  }

  {
    std::ofstream out(mf.path("highway_grids.csv"));
    out << "geohash,bookings,late_bookings,avg_speed_kmh\n";
    for (const auto& g :
         high_speed_late_grids(derived, a.speed_min, a.min_late, a.precision))
      out << g.geohash << ',' << g.bookings << ',' << g.late_bookings << ','
          << csv_num(g.avg_speed_kmh) << '\n';
    mf.artifact("highway_grids.csv");
  }
  mf.write();
  return 0;
}

// ------------------------------------------------------------ train / mrmr

struct TrainedPipeline {
  FeatureTables tables;
  DatasetSplits splits;
  LogisticModel model;
  TrainStats stats;
};

TrainedPipeline run_training(const std::string& bookings_csv, int tz_offset_min,
                             AggregateSource source, std::uint64_t seed,
                             const TrainOptions& opts) {
  const PreprocessResult pre = preprocess(read_bookings_csv(bookings_csv));
  if (pre.kept.empty()) throw DataError("no bookings left after preprocessing");
  const std::vector<DerivedBooking> derived = derive_all(pre.kept, tz_offset_min);

  std::vector<int> labels;
  labels.reserve(derived.size());
  for (const auto& b : derived) labels.push_back(b.is_late_pickup);
  const SplitIndices idx = balance_split_indices(labels, seed);

  auto pick = [&](const std::vector<std::size_t>& which) {
    std::vector<DerivedBooking> out;
    out.reserve(which.size());
    for (std::size_t i : which) out.push_back(derived[i]);
    return out;
  };
  const std::vector<DerivedBooking> train_b = pick(idx.train);
  const std::vector<DerivedBooking> test_b = pick(idx.test);
  const std::vector<DerivedBooking> val_b = pick(idx.validation);

  TrainedPipeline tp;
  tp.tables = aggregate_all(source == AggregateSource::all ? derived : train_b);
  tp.splits.train = assemble_dataset(train_b, tp.tables);
  tp.splits.test = assemble_dataset(test_b, tp.tables);
  tp.splits.validation = assemble_dataset(val_b, tp.tables);

  const std::vector<double> fill = feature_fill_means(tp.splits.train);
  fill_missing(tp.splits.train, fill);
  fill_missing(tp.splits.test, fill);
  fill_missing(tp.splits.validation, fill);

  tp.model = train_logistic(tp.splits.train, opts, &tp.stats);
  return tp;
}

AggregateSource parse_source(const std::string& s) {
  if (s == "train_only") return AggregateSource::train_only;
  if (s == "all") return AggregateSource::all;
  throw DataError("invalid --aggregate-source '" + s + "', expected train_only|all");
}

struct TrainArgs {
  std::string in, out;
  std::uint64_t seed = 0;
  int tz_offset_min = 480;
  std::string source = "train_only";
  double l2 = 1e-4;
  std::size_t max_iters = 5000;
  double tol = 1e-8;
};

int cmd_train(const TrainArgs& a) {
  Manifest mf(a.out);
  mf.set("subcommand", "train");
  mf.set("input.bookings", a.in);
  mf.set("seed", a.seed);
  mf.set("aggregate_source", a.source);

  TrainOptions opts;
  opts.l2 = a.l2;
  opts.max_iters = a.max_iters;
  opts.tol = a.tol;
  const TrainedPipeline tp =
      run_training(a.in, a.tz_offset_min, parse_source(a.source), a.seed, opts);

  write_model(tp.model, mf.path("model.txt"));
  mf.artifact("model.txt");
  {
    std::ofstream out(mf.path("eval.csv"));
    out << "split,tn,fp,fn,tp,accuracy\n";
    const std::pair<const char*, const LabeledDataset*> splits[] = {
        {"train", &tp.splits.train}, {"test", &tp.splits.test},
        {"validation", &tp.splits.validation}};
    for (const auto& [name, ds] : splits) {
      const ConfusionMatrix cm = evaluate(tp.model, *ds);
      out << name << ',' << cm.tn << ',' << cm.fp << ',' << cm.fn << ',' << cm.tp << ','
          << csv_num(cm.accuracy()) << '\n';
      log_info(std::string(name) + " accuracy: " + std::to_string(cm.accuracy()));
    }
    mf.artifact("eval.csv");
  }
  mf.set("iterations", static_cast<std::uint64_t>(tp.stats.iterations));
  mf.write();
  return 0;
}

struct MrmrArgs {
  std::string in, out;
  std::uint64_t seed = 0;
  int tz_offset_min = 480;
  std::string source = "train_only";
  std::size_t top_k = 15;
  std::size_t bins = 10;
};

int cmd_mrmr(const MrmrArgs& a) {
  Manifest mf(a.out);
  mf.set("subcommand", "mrmr");
  mf.set("input.bookings", a.in);
  mf.set("seed", a.seed);
  mf.set("aggregate_source", a.source);
  mf.set("bins", static_cast<std::uint64_t>(a.bins));

  const TrainedPipeline tp =
      run_training(a.in, a.tz_offset_min, parse_source(a.source), a.seed, TrainOptions{});
  const std::vector<RankedFeature> ranked =
      mrmr_rank(tp.splits.train, std::min(a.top_k, tp.splits.train.width()), a.bins);
  {
    std::ofstream out(mf.path("mrmr.csv"));
    out << "rank,feature,score\n";
    for (std::size_t i = 0; i < ranked.size(); ++i)
      out << (i + 1) << ',' << ranked[i].name << ',' << csv_num(ranked[i].score) << '\n';
    mf.artifact("mrmr.csv");
  }
  mf.write();
  return 0;
}

// ------------------------------------------------------------------ score

struct ScoreArgs {
  std::string in, bookings, model, out;
  std::string mechanism = "ratio";
  std::string smoothing = "laplace";
  std::size_t min_bookings = 5;
  double epsilon = 0.5;
  int tz_offset_min = 480;
};

int cmd_score(const ScoreArgs& a) {
  Manifest mf(a.out);
  mf.set("subcommand", "score");
  mf.set("input.requests", a.in);
  mf.set("input.bookings", a.bookings);
  mf.set("mechanism", a.mechanism);

  ScoreMechanism mech;
  if (a.mechanism == "ratio") mech = ScoreMechanism::ratio;
  else if (a.mechanism == "logistic") mech = ScoreMechanism::logistic;
  else throw DataError("invalid --mechanism '" + a.mechanism + "', expected ratio|logistic");

  const PreprocessResult pre = preprocess(read_bookings_csv(a.bookings));
  if (pre.kept.empty()) throw DataError("no bookings left after preprocessing");
  const FeatureTables tables = aggregate_all(derive_all(pre.kept, a.tz_offset_min));

  LogisticModel model;
  if (mech == ScoreMechanism::logistic) {
    if (a.model.empty()) throw DataError("--mechanism logistic requires --model");
    model = read_model(a.model);
    mf.set("input.model", a.model);
  }

  ScoreConfig cfg;
  cfg.min_bookings = a.min_bookings;
  cfg.epsilon = a.epsilon;
  if (a.smoothing == "laplace") cfg.smoothing = Smoothing::laplace;
  else if (a.smoothing == "none") cfg.smoothing = Smoothing::none;
  else throw DataError("invalid --smoothing '" + a.smoothing + "', expected laplace|none");

  // requests CSV: driver_id,driverGh,pickupGh,dow,hourgroup; each distinct
  // pickup geohash forms one booking's candidate group
  std::ifstream in(a.in);
  if (!in) throw DataError("cannot open file: " + a.in);
  std::string line;
  if (!std::getline(in, line)) throw DataError(a.in + ":1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "driver_id,driverGh,pickupGh,dow,hourgroup")
    throw DataError(a.in + ":1: unexpected header");
  std::vector<ScoreRequest> requests;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string driver, dgh, pgh, dow, hg;
    if (!std::getline(ss, driver, ',') || !std::getline(ss, dgh, ',') ||
        !std::getline(ss, pgh, ',') || !std::getline(ss, dow, ',') ||
        !std::getline(ss, hg))
      throw DataError(a.in + ":" + std::to_string(lineno) + ": expected 5 fields");
    ScoreRequest req;
    req.driver_id = driver;
    req.driver_gh = GeoCell{dgh};
    req.pickup_gh = GeoCell{pgh};
    req.dow = parse_dow(dow);
    req.hourgroup = std::stoi(hg);
    if (req.hourgroup < 0 || req.hourgroup > 7)
      throw DataError(a.in + ":" + std::to_string(lineno) + ": hourgroup out of range");
    requests.push_back(std::move(req));
  }
  if (requests.empty()) throw DataError(a.in + ": no requests");

  // group by pickup geohash, first-appearance order
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<ScoreRequest>> groups;
  for (const auto& r : requests) {
    if (groups.find(r.pickup_gh.code) == groups.end()) group_order.push_back(r.pickup_gh.code);
    groups[r.pickup_gh.code].push_back(r);
  }

  std::ofstream out_csv(mf.path("scores.csv"));
  out_csv << "driver_id,score,mechanism,qualified\n";
  for (const auto& code : group_order) {
    const auto ranked = rank_candidates(groups[code], mech, tables, cfg,
                                        mech == ScoreMechanism::logistic ? &model : nullptr);
    for (const auto& c : ranked)
      out_csv << c.driver_id << ',' << csv_num(c.score) << ',' << a.mechanism << ','
              << (c.qualified ? 1 : 0) << '\n';
  }
  mf.artifact("scores.csv");
  mf.write();
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"cluster-tendency and booking-analytics toolkit"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)")
      ->capture_default_str();

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate synthetic data");
  gen_cmd->add_option("--kind", gen.kind, "example1|example2|gaussian2d|bookings")
      ->required();
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--m", gen.m, "row count override");
  gen_cmd->add_option("--n", gen.n, "column / point count override");
  gen_cmd->add_option("--k", gen.k, "cluster count (gaussian2d)");
  gen_cmd->add_flag("--contiguous", gen.contiguous, "contiguous planted blocks (example2)");
  gen_cmd->add_option("--drivers", gen.drivers, "driver count (bookings)");
  gen_cmd->add_option("--grids", gen.grids, "grid count (bookings)");
  gen_cmd->add_option("--bookings", gen.bookings, "booking count (bookings)");
  gen_cmd->add_option("--late-rate", gen.late_rate, "target late rate (bookings)");

  std::string ivat_in, ivat_out;
  std::size_t ivat_krows = 0, ivat_maxk = 20;
  CLI::App* ivat_cmd = app.add_subcommand("ivat", "minimax-order a square matrix");
  ivat_cmd->add_option("--in", ivat_in, "dissimilarity matrix file")->required();
  ivat_cmd->add_option("--out", ivat_out, "output directory")->required();
  ivat_cmd->add_option("--krows", ivat_krows, "also cut this many clusters");
  ivat_cmd->add_option("--max-k", ivat_maxk, "cap for the suggested cluster count");

  std::string sco_in, sco_out;
  CoClusterOptions sco;
  double sco_tau = 0.0;
  bool sco_perf = false;
  CLI::App* sco_cmd = app.add_subcommand("scoivat", "co-cluster a rectangular matrix");
  sco_cmd->add_option("--in", sco_in, "relational matrix file")->required();
  sco_cmd->add_option("--out", sco_out, "output directory")->required();
  sco_cmd->add_option("--m", sco.row_samples, "row sample size (0 = no sampling)");
  sco_cmd->add_option("--n", sco.col_samples, "column sample size (0 = no sampling)");
  sco_cmd->add_option("--kprime", sco.k_prime, "distinguished objects per side");
  sco_cmd->add_option("--krows", sco.k_rows, "row cluster count")->required();
  sco_cmd->add_option("--kcols", sco.k_cols, "column cluster count")->required();
  CLI::Option* tau_opt = sco_cmd->add_option("--tau", sco_tau, "co-cluster flag threshold");
  sco_cmd->add_option("--seed", sco.seed, "random seed");
  sco_cmd->add_flag("--performance", sco_perf, "treat entries as {-1} U [0,1] performance");
  sco_cmd->add_flag("--masked", sco.masked_distances, "skip -1 coordinates in distances");

  AggregateArgs agg;
  CLI::App* agg_cmd = app.add_subcommand("aggregate", "booking feature tables and matrices");
  agg_cmd->add_option("--in", agg.in, "bookings CSV")->required();
  agg_cmd->add_option("--out", agg.out, "output directory")->required();
  agg_cmd->add_option("--tz-offset-min", agg.tz_offset_min, "local-time offset, minutes");
  agg_cmd->add_option("--precision", agg.precision, "geohash precision for the grid query");
  agg_cmd->add_option("--speed-min", agg.speed_min, "grid query speed threshold, km/h");
  agg_cmd->add_option("--min-late", agg.min_late, "grid query late-booking floor");

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "train the timely-pickup classifier");
  train_cmd->add_option("--in", train.in, "bookings CSV")->required();
  train_cmd->add_option("--out", train.out, "output directory")->required();
  train_cmd->add_option("--seed", train.seed, "random seed");
  train_cmd->add_option("--tz-offset-min", train.tz_offset_min, "local-time offset, minutes");
  train_cmd->add_option("--aggregate-source", train.source, "train_only|all");
  train_cmd->add_option("--l2", train.l2, "ridge strength");
  train_cmd->add_option("--max-iters", train.max_iters, "gradient descent iteration cap");
  train_cmd->add_option("--tol", train.tol, "gradient max-norm stop threshold");

  MrmrArgs mrmr;
  CLI::App* mrmr_cmd = app.add_subcommand("mrmr", "rank predictors");
  mrmr_cmd->add_option("--in", mrmr.in, "bookings CSV")->required();
  mrmr_cmd->add_option("--out", mrmr.out, "output directory")->required();
  mrmr_cmd->add_option("--seed", mrmr.seed, "random seed");
  mrmr_cmd->add_option("--tz-offset-min", mrmr.tz_offset_min, "local-time offset, minutes");
  mrmr_cmd->add_option("--aggregate-source", mrmr.source, "train_only|all");
  mrmr_cmd->add_option("--top", mrmr.top_k, "features to rank");
  mrmr_cmd->add_option("--bins", mrmr.bins, "equal-frequency bins");

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "score driver candidates");
  score_cmd->add_option("--in", score.in, "requests CSV")->required();
  score_cmd->add_option("--bookings", score.bookings, "historical bookings CSV")->required();
  score_cmd->add_option("--model", score.model, "logistic model file");
  score_cmd->add_option("--out", score.out, "output directory")->required();
  score_cmd->add_option("--mechanism", score.mechanism, "ratio|logistic");
  score_cmd->add_option("--smoothing", score.smoothing, "laplace|none");
  score_cmd->add_option("--min-bookings", score.min_bookings, "qualification threshold");
  score_cmd->add_option("--epsilon", score.epsilon, "denominator floor, percentage points");
  score_cmd->add_option("--tz-offset-min", score.tz_offset_min, "local-time offset, minutes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return 1;
  }

  set_thread_cap(threads);
  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (ivat_cmd->parsed()) return cmd_ivat(ivat_in, ivat_out, ivat_krows, ivat_maxk);
    if (sco_cmd->parsed())
      return cmd_scoivat(sco_in, sco_out, sco, sco_tau, tau_opt->count() > 0, sco_perf);
    if (agg_cmd->parsed()) return cmd_aggregate(agg);
    if (train_cmd->parsed()) return cmd_train(train);
    if (mrmr_cmd->parsed()) return cmd_mrmr(mrmr);
    if (score_cmd->parsed()) return cmd_score(score);
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}

}  // namespace tendency
