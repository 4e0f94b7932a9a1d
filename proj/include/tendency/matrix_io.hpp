#ifndef TENDENCY_MATRIX_IO_HPP
#define TENDENCY_MATRIX_IO_HPP

#include <string>
#include <vector>

#include "tendency/matrix.hpp"

namespace tendency {

/// Dense matrix text format:
///   line 1: "<rows> <cols>"
///   then <rows> lines of <cols> whitespace-separated decimal numbers
///   optional trailing comment lines starting with '#'
/// Numbers are written with 17 significant digits, so write/read round-trips
/// are bit-exact. Parse failures name the offending 1-based line.
Matrix read_matrix(const std::string& path);
void write_matrix(const Matrix& m, const std::string& path);

/// One integer per line.
std::vector<int> read_labels(const std::string& path);
void write_labels(const std::vector<int>& labels, const std::string& path);
std::vector<std::size_t> read_index_list(const std::string& path);
void write_index_list(const std::vector<std::size_t>& indices, const std::string& path);

/// One string per line (key-map files for the performance matrix).
std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::vector<std::string>& lines, const std::string& path);

}  // namespace tendency

#endif
