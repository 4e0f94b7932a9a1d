#ifndef TENDENCY_MATRIX_HPP
#define TENDENCY_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tendency/common.hpp"

namespace tendency {

/// Dense row-major matrix of doubles. The shared storage type behind the
/// feature / dissimilarity / relational views below. Immutable by
/// convention once built; safe to share read-only across threads.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // rows * cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), values(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  const double* row(std::size_t i) const { return values.data() + i * cols; }
  double* row(std::size_t i) { return values.data() + i * cols; }
};

/// N objects as p-dimensional feature vectors, optionally with planted
/// ground-truth labels (used by the synthetic generators).
struct FeatureMatrix {
  Matrix data;  // rows = objects, cols = features
  std::optional<std::vector<int>> ground_truth_labels;

  std::size_t size() const { return data.rows; }
  std::size_t dim() const { return data.cols; }
};

/// Square symmetric nonnegative matrix with zero diagonal. `minimax_transformed`
/// marks matrices produced by the path-based minimax transform.
struct DissimilarityMatrix {
  Matrix data;
  bool minimax_transformed = false;

  std::size_t size() const { return data.rows; }
  double at(std::size_t i, std::size_t j) const { return data.at(i, j); }
};

enum class RectKind { generic, performance };

/// M x N relational matrix between row objects and column objects.
/// Performance-kind entries are restricted to {-1} U [0, 1], where -1 is
/// the "no data" sentinel.
struct RectRelationalMatrix {
  Matrix data;
  RectKind kind = RectKind::generic;

  std::size_t row_count() const { return data.rows; }
  std::size_t col_count() const { return data.cols; }
  double at(std::size_t i, std::size_t j) const { return data.at(i, j); }
};

/// Throws DataError (naming the offending cell) if validation fails.
void validate_feature_matrix(const FeatureMatrix& m);
void validate_dissimilarity(const Matrix& m);
void validate_rect(const Matrix& m, RectKind kind);

DissimilarityMatrix make_dissimilarity(Matrix m);
RectRelationalMatrix make_rect(Matrix m, RectKind kind = RectKind::generic);

/// All pairwise Euclidean distances between the objects of `features`.
/// Output is exactly symmetric with a zero diagonal; cells are computed
/// independently (parallel-safe, deterministic).
DissimilarityMatrix pairwise_dissimilarity(const FeatureMatrix& features);

/// Feature-vector view over one axis of a dense matrix: row objects are the
/// matrix rows, column objects are the columns. Column-side distance scans
/// stream the matrix row by row, so both axes accumulate per-target sums in
/// the same order; processing columns of D is bit-identical to processing
/// rows of D transposed.
class ObjectView {
 public:
  enum class Axis { rows, cols };

  ObjectView(const Matrix& m, Axis axis) : m_(m), axis_(axis) {}

  std::size_t count() const { return axis_ == Axis::rows ? m_.rows : m_.cols; }
  std::size_t dim() const { return axis_ == Axis::rows ? m_.cols : m_.rows; }

  std::vector<double> object(std::size_t idx) const;
  std::vector<double> centroid() const;

  /// Squared Euclidean distance from the given vector (length dim()) to
  /// every object. With `masked`, coordinates where either value is the -1
  /// sentinel are skipped.
  std::vector<double> sq_dist_to_all(const double* v, bool masked = false) const;
  std::vector<double> sq_dist_to_all(std::size_t idx, bool masked = false) const {
    return sq_dist_to_all(object(idx).data(), masked);
  }

  /// Dense copy of the selected objects, one per row, in the given order.
  Matrix extract(const std::vector<std::size_t>& indices) const;

 private:
  const Matrix& m_;
  Axis axis_;
};

std::string format_double(double v);  // 17 significant digits, round-trip exact

}  // namespace tendency

#endif
