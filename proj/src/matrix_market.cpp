#include "mixfactor/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace mixfactor {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_value(std::string_view token, const std::string& source) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw IoError(source, "malformed value '" + std::string(token) + "'");
  return v;
}

}  // namespace

void write_matrix_market(std::ostream& out, const Matrix& a, std::string_view comment) {
  out << "%%MatrixMarket matrix array real general\n";
  std::istringstream lines{std::string(comment)};
  for (std::string line; std::getline(lines, line);) out << '%' << line << '\n';
  out << a.rows() << ' ' << a.cols() << '\n';
  char buf[40];
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      out << buf << '\n';
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_matrix_market(out, a, comment);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

Matrix read_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(source, "empty file");
  std::istringstream banner(lowercase(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix")
    throw IoError(source, "missing %%MatrixMarket matrix banner");
  if (format != "array" || field != "real" || symmetry != "general")
    throw IoError(source, "only 'array real general' matrices are supported");

  do {
    if (!std::getline(in, line)) throw IoError(source, "missing size line");
  } while (line.empty() || line[0] == '%');
  std::istringstream dims(line);
  long long rows = -1, cols = -1;
  if (!(dims >> rows >> cols) || rows < 0 || cols < 0) throw IoError(source, "malformed size line");

  Matrix a(rows, cols);
  const long long total = rows * cols;
  long long count = 0;
  std::string token;
  while (in >> token) {
    if (token[0] == '%') {
      std::getline(in, line);
      continue;
    }
    if (count >= total) throw IoError(source, "more entries than the declared size");
    a(count % rows, count / rows) = parse_value(token, source);
    ++count;
  }
  if (count != total)
    throw IoError(source, "expected " + std::to_string(total) + " entries, found " + std::to_string(count));
  return a;
}

Matrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_matrix_market(in, path.string());
}

}  // namespace mixfactor
