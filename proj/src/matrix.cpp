#include "tendency/matrix.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace tendency {

// ---------------------------------------------------------------- common.hpp

namespace {

LogLevel parse_log_level() {
  const char* env = std::getenv("TENDENCY_LOG");
  if (env == nullptr) return LogLevel::error;
  const std::string v(env);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::error;
}

std::atomic<unsigned> g_thread_cap{0};

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_log_level();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

void set_thread_cap(unsigned cap) { g_thread_cap.store(cap); }

unsigned thread_cap() {
  const unsigned cap = g_thread_cap.load();
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return cap == 0 ? hw : std::min(cap, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t chunk) {
  if (n == 0) return;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_cap(), nchunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
}

// ---------------------------------------------------------------- validation

void validate_feature_matrix(const FeatureMatrix& m) {
  for (std::size_t i = 0; i < m.data.rows; ++i)
    for (std::size_t j = 0; j < m.data.cols; ++j)
      if (!std::isfinite(m.data.at(i, j)))
        throw DataError("feature matrix cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not finite");
  if (m.ground_truth_labels && m.ground_truth_labels->size() != m.data.rows)
    throw DataError("label array length " + std::to_string(m.ground_truth_labels->size()) +
                    " does not match object count " + std::to_string(m.data.rows));
}

void validate_dissimilarity(const Matrix& m) {
  if (m.rows != m.cols)
    throw DataError("dissimilarity matrix must be square, got " +
                    std::to_string(m.rows) + "x" + std::to_string(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (m.at(i, i) != 0.0)
      throw DataError("dissimilarity diagonal cell (" + std::to_string(i) + "," +
                      std::to_string(i) + ") is not zero");
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw DataError("dissimilarity cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not finite and nonnegative");
      if (m.at(j, i) != v)
        throw DataError("dissimilarity cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not symmetric");
    }
  }
}

void validate_rect(const Matrix& m, RectKind kind) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      if (!std::isfinite(v))
        throw DataError("relational cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") is not finite");
      if (kind == RectKind::performance && v != -1.0 && (v < 0.0 || v > 1.0))
        throw DataError("performance cell (" + std::to_string(i) + "," +
                        std::to_string(j) + ") = " + std::to_string(v) +
                        " is outside {-1} U [0,1]");
    }
  }
}

DissimilarityMatrix make_dissimilarity(Matrix m) {
  validate_dissimilarity(m);
  DissimilarityMatrix d;
  d.data = std::move(m);
  return d;
}

RectRelationalMatrix make_rect(Matrix m, RectKind kind) {
  validate_rect(m, kind);
  RectRelationalMatrix r;
  r.data = std::move(m);
  r.kind = kind;
  return r;
}

// ------------------------------------------------------------------ pairwise

namespace {

double euclidean(const double* a, const double* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

}  // namespace

DissimilarityMatrix pairwise_dissimilarity(const FeatureMatrix& features) {
  validate_feature_matrix(features);
  const std::size_t n = features.size();
  const std::size_t p = features.dim();
  Matrix out(n, n, 0.0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out.at(i, j) = euclidean(features.data.row(i), features.data.row(j), p);
  }, 16);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.at(j, i) = out.at(i, j);
  DissimilarityMatrix d;
  d.data = std::move(out);
  return d;
}

// ---------------------------------------------------------------- ObjectView

std::vector<double> ObjectView::object(std::size_t idx) const {
  std::vector<double> v(dim());
  if (axis_ == Axis::rows) {
    const double* r = m_.row(idx);
    v.assign(r, r + m_.cols);
  } else {
    for (std::size_t i = 0; i < m_.rows; ++i) v[i] = m_.at(i, idx);
  }
  return v;
}

std::vector<double> ObjectView::centroid() const {
  std::vector<double> c(dim(), 0.0);
  if (axis_ == Axis::rows) {
    for (std::size_t i = 0; i < m_.rows; ++i) {
      const double* r = m_.row(i);
      for (std::size_t k = 0; k < m_.cols; ++k) c[k] += r[k];
    }
    for (double& x : c) x /= static_cast<double>(m_.rows);
  } else {
    // component i is the mean of row i over columns; summing each row
    // left to right matches the row-axis order on the transposed matrix
    for (std::size_t i = 0; i < m_.rows; ++i) {
      double s = 0.0;
      const double* r = m_.row(i);
      for (std::size_t j = 0; j < m_.cols; ++j) s += r[j];
      c[i] = s / static_cast<double>(m_.cols);
    }
  }
  return c;
}

std::vector<double> ObjectView::sq_dist_to_all(const double* v, bool masked) const {
  std::vector<double> out(count(), 0.0);
  if (axis_ == Axis::rows) {
    parallel_for(m_.rows, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double* r = m_.row(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < m_.cols; ++k) {
          if (masked && (r[k] == -1.0 || v[k] == -1.0)) continue;
          const double diff = r[k] - v[k];
          acc += diff * diff;
        }
        out[i] = acc;
      }
    }, 64);
  } else {
    // stream rows; each target column j accumulates in row order, matching
    // the row-axis loop on the transposed matrix exactly
    parallel_for(m_.cols, [&](std::size_t jb, std::size_t je) {
      for (std::size_t i = 0; i < m_.rows; ++i) {
        const double* r = m_.row(i);
        const double vi = v[i];
        for (std::size_t j = jb; j < je; ++j) {
          if (masked && (r[j] == -1.0 || vi == -1.0)) continue;
          const double diff = r[j] - vi;
          out[j] += diff * diff;
        }
      }
    }, 256);
  }
  return out;
}

Matrix ObjectView::extract(const std::vector<std::size_t>& indices) const {
  Matrix out(indices.size(), dim());
  if (axis_ == Axis::rows) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const double* r = m_.row(indices[i]);
      std::copy(r, r + m_.cols, out.row(i));
    }
  } else {
    for (std::size_t k = 0; k < m_.rows; ++k) {
      const double* r = m_.row(k);
      for (std::size_t i = 0; i < indices.size(); ++i) out.at(i, k) = r[indices[i]];
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace tendency
