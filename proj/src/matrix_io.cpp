#include "tendency/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tendency {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  throw DataError(path + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, const std::string& path, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) parse_fail(path, line, "non-numeric token '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    parse_fail(path, line, "non-numeric token '" + tok + "'");
  } catch (const std::out_of_range&) {
    parse_fail(path, line, "number out of range '" + tok + "'");
  }
}

long long parse_integer(const std::string& tok, const std::string& path, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    parse_fail(path, line, "expected integer, got '" + tok + "'");
  return v;
}

}  // namespace

Matrix read_matrix(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "missing header line");
  std::istringstream header(line);
  std::string rtok, ctok, extra;
  if (!(header >> rtok >> ctok) || (header >> extra))
    parse_fail(path, 1, "malformed header, expected '<rows> <cols>'");
  const long long r = parse_integer(rtok, path, 1);
  const long long c = parse_integer(ctok, path, 1);
  if (r < 0 || c < 0) parse_fail(path, 1, "negative dimension in header");

  Matrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  std::size_t lineno = 1;
  for (std::size_t i = 0; i < m.rows; ++i) {
    ++lineno;
    if (!std::getline(in, line))
      parse_fail(path, lineno, "unexpected end of file; expected " +
                                   std::to_string(m.rows) + " data rows");
    std::istringstream row(line);
    std::string tok;
    std::size_t j = 0;
    while (row >> tok) {
      if (j >= m.cols)
        parse_fail(path, lineno, "row has more than " + std::to_string(m.cols) + " values");
      m.at(i, j++) = parse_number(tok, path, lineno);
    }
    if (j != m.cols)
      parse_fail(path, lineno, "row has " + std::to_string(j) + " values, expected " +
                                   std::to_string(m.cols));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] != '#') {
      std::istringstream rest(line);
      std::string tok;
      if (rest >> tok)
        parse_fail(path, lineno, "unexpected content after data rows: '" + tok + "'");
    }
  }
  return m;
}

void write_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out = open_out(path);
  out << m.rows << ' ' << m.cols << '\n';
  std::string line;
  for (std::size_t i = 0; i < m.rows; ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j != 0) line += ' ';
      line += format_double(m.at(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<int> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    out.push_back(static_cast<int>(parse_integer(line, path, lineno)));
  }
  return out;
}

void write_labels(const std::vector<int>& labels, const std::string& path) {
  std::ofstream out = open_out(path);
  for (int v : labels) out << v << '\n';
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::size_t> read_index_list(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<std::size_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const long long v = parse_integer(line, path, lineno);
    if (v < 0) parse_fail(path, lineno, "negative index");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void write_index_list(const std::vector<std::size_t>& indices, const std::string& path) {
  std::ofstream out = open_out(path);
  for (std::size_t v : indices) out << v << '\n';
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

void write_lines(const std::vector<std::string>& lines, const std::string& path) {
  std::ofstream out = open_out(path);
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace tendency
