#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mixfactor/types.hpp"

namespace mixfactor {

class IoError : public std::runtime_error {
 public:
  IoError(std::filesystem::path path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Matrix Market "array real general": dimensions, then entries in
/// column-major order, one per line with 17 significant digits. Each line of
/// `comment` becomes a '%' line after the banner.
void write_matrix_market(std::ostream& out, const Matrix& a, std::string_view comment = {});
void write_matrix_market(const std::filesystem::path& path, const Matrix& a, std::string_view comment = {});

Matrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
Matrix read_matrix_market(const std::filesystem::path& path);

}  // namespace mixfactor
