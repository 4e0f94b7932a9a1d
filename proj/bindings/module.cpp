#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tendency/coclust.hpp"
#include "tendency/generators.hpp"
#include "tendency/geohash.hpp"
#include "tendency/imaging.hpp"
#include "tendency/metrics.hpp"
#include "tendency/mmrs.hpp"
#include "tendency/prediction.hpp"
#include "tendency/vat.hpp"

namespace py = pybind11;
using namespace tendency;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw DataError("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
  std::copy(arr.data(), arr.data() + arr.size(), m.values.begin());
  return m;
}

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> arr({m.rows, m.cols});
  std::copy(m.values.begin(), m.values.end(), arr.mutable_data());
  return arr;
}

DissimilarityMatrix to_dissimilarity(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  return make_dissimilarity(to_matrix(arr));
}

FeatureMatrix to_features(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  FeatureMatrix f;
  f.data = to_matrix(arr);
  return f;
}

py::array_t<std::uint8_t> image_array(const RasterImage& img) {
  if (img.channels == 1) {
    py::array_t<std::uint8_t> arr({img.height, img.width});
    std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
    return arr;
  }
  py::array_t<std::uint8_t> arr({img.height, img.width, img.channels});
  std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "VAT/iVAT cluster-tendency assessment, MMRS sampling, and sco-iVAT "
            "co-clustering over dense matrices";

  py::register_exception<DataError>(m, "DataError");

  m.def(
      "pairwise_dissimilarity",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return to_array(pairwise_dissimilarity(to_features(x)).data);
      },
      py::arg("features"), "All pairwise Euclidean distances between rows.");

  m.def(
      "vat_reorder",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d) {
        const VatResult res = vat_reorder(to_dissimilarity(d));
        return py::make_tuple(res.ordering.permutation, to_array(res.reordered.data),
                              res.ordering.insertion_distances);
      },
      py::arg("d"), "MST-based reordering: (permutation, reordered, insertion_distances).");

  m.def(
      "ivat_transform",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d) {
        return to_array(ivat_transform(to_dissimilarity(d)).data);
      },
      py::arg("d"), "Path-based minimax distance transform (input index order).");

  m.def(
      "minimax_oracle",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t bound) { return to_array(minimax_oracle(to_dissimilarity(d), bound).data); },
      py::arg("d"), py::arg("bound") = 60,
      "Exact minimax distances by fixpoint relaxation (small inputs).");

  m.def(
      "cut_clusters",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t k) {
        return cut_clusters(vat_reorder(to_dissimilarity(d)).ordering, k);
      },
      py::arg("d"), py::arg("k"),
      "Single-linkage labels from cutting the k-1 largest MST edges.");

  m.def(
      "suggest_k",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t max_k) {
        return suggest_k(vat_reorder(to_dissimilarity(d)).ordering, max_k);
      },
      py::arg("d"), py::arg("max_k") = 20, "MST edge-weight gap heuristic for k.");

  m.def(
      "maximin_select",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         std::size_t k_prime) { return maximin_select(to_features(x), k_prime); },
      py::arg("features"), py::arg("k_prime"));

  m.def(
      "mmrs_sample",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
         std::size_t k_prime, std::size_t n, std::uint64_t seed) {
        const MmrsSample s = mmrs_sample(to_features(x), k_prime, n, seed);
        return py::make_tuple(s.sample, s.distinguished, s.group_of);
      },
      py::arg("features"), py::arg("k_prime"), py::arg("n"), py::arg("seed") = 0,
      "Maximin random sample: (sample, distinguished, group_of).");

  py::class_<CoClusterResult>(m, "CoClusterResult")
      .def_readonly("row_perm", &CoClusterResult::row_perm)
      .def_readonly("col_perm", &CoClusterResult::col_perm)
      .def_readonly("row_labels", &CoClusterResult::row_labels)
      .def_readonly("col_labels", &CoClusterResult::col_labels)
      .def_readonly("sampled_rows", &CoClusterResult::sampled_rows)
      .def_readonly("sampled_cols", &CoClusterResult::sampled_cols)
      .def_property_readonly(
          "reordered", [](const CoClusterResult& r) { return to_array(r.reordered.data); })
      .def_property_readonly(
          "row_rdi", [](const CoClusterResult& r) { return to_array(r.row_rdi.data); })
      .def_property_readonly(
          "col_rdi", [](const CoClusterResult& r) { return to_array(r.col_rdi.data); });

  m.def(
      "sco_ivat",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t m_samples, std::size_t n_samples, std::size_t k_prime,
         std::size_t k_rows, std::size_t k_cols, std::uint64_t seed, bool masked) {
        CoClusterOptions opts;
        opts.row_samples = m_samples;
        opts.col_samples = n_samples;
        opts.k_prime = k_prime;
        opts.k_rows = k_rows;
        opts.k_cols = k_cols;
        opts.seed = seed;
        opts.masked_distances = masked;
        return sco_ivat(make_rect(to_matrix(d)), opts);
      },
      py::arg("d"), py::arg("m") = 0, py::arg("n") = 0, py::arg("k_prime") = 15,
      py::arg("k_rows") = 1, py::arg("k_cols") = 1, py::arg("seed") = 0,
      py::arg("masked") = false,
      "Sampled co-clustering of a rectangular relational matrix.");

  py::class_<CoClusterBlock>(m, "CoClusterBlock")
      .def_readonly("row_cluster", &CoClusterBlock::row_cluster)
      .def_readonly("col_cluster", &CoClusterBlock::col_cluster)
      .def_readonly("row_begin", &CoClusterBlock::row_begin)
      .def_readonly("row_end", &CoClusterBlock::row_end)
      .def_readonly("col_begin", &CoClusterBlock::col_begin)
      .def_readonly("col_end", &CoClusterBlock::col_end)
      .def_readonly("block_mean", &CoClusterBlock::block_mean)
      .def_readonly("global_mean", &CoClusterBlock::global_mean)
      .def_readonly("flagged", &CoClusterBlock::flagged);

  m.def("extract_coclusters", &extract_coclusters, py::arg("result"), py::arg("tau"));
  m.def("default_cocluster_tau", &default_cocluster_tau, py::arg("result"));

  m.def(
      "extend_labels",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& sampled,
         const std::vector<int>& labels,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& all) {
        return extend_labels(to_features(sampled), labels, to_features(all));
      },
      py::arg("sampled"), py::arg("sampled_labels"), py::arg("all"),
      "Nearest-prototype label extension.");

  m.def(
      "geohash_encode",
      [](double lat, double lon, std::size_t precision) {
        return geohash_encode(lat, lon, precision).code;
      },
      py::arg("lat"), py::arg("lon"), py::arg("precision") = 6);

  m.def(
      "geohash_decode",
      [](const std::string& code) {
        const GeoBox box = geohash_decode(GeoCell{code});
        return py::make_tuple(box.lat_min, box.lat_max, box.lon_min, box.lon_max);
      },
      py::arg("code"), "Bounding box (lat_min, lat_max, lon_min, lon_max).");

  m.def(
      "gen_example1",
      [](std::uint64_t seed) {
        const Example1Data d = gen_example1(seed);
        return py::make_tuple(to_array(d.matrix.data), d.row_labels, d.col_labels);
      },
      py::arg("seed") = 0);

  m.def(
      "gen_example2",
      [](std::uint64_t seed, std::size_t rows, std::size_t cols) {
        Example2Config cfg;
        cfg.rows = rows;
        cfg.cols = cols;
        const Example2Data d = gen_example2(seed, cfg);
        py::list blocks;
        for (const auto& b : d.blocks)
          blocks.append(py::make_tuple(b.row_indices, b.col_indices));
        return py::make_tuple(to_array(d.matrix.data), blocks);
      },
      py::arg("seed") = 0, py::arg("rows") = 10000, py::arg("cols") = 8000);

  m.def(
      "gen_gaussian2d",
      [](std::size_t n_total, std::size_t k, std::uint64_t seed) {
        const FeatureMatrix f = gen_gaussian2d(n_total, k, seed);
        return py::make_tuple(to_array(f.data), *f.ground_truth_labels);
      },
      py::arg("n_total"), py::arg("k_clusters"), py::arg("seed") = 0);

  m.def(
      "render_grayscale",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t upscale) { return image_array(render_grayscale(to_matrix(d), upscale)); },
      py::arg("d"), py::arg("upscale") = 1);

  m.def(
      "render_performance",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& d,
         std::size_t upscale) {
        return image_array(render_performance(to_matrix(d), upscale));
      },
      py::arg("d"), py::arg("upscale") = 1);

  m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("a"), py::arg("b"));
  m.def("spearman", &spearman, py::arg("a"), py::arg("b"));
}
