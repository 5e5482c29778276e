#ifndef GPG_IO_HPP
#define GPG_IO_HPP

#include "gpg/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace gpg::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plain text: one matrix row per line, comma separated, %.17g.
Matrix<double> read_csv(std::istream& in);
Matrix<double> read_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, const Matrix<double>& m);
void write_csv(const std::filesystem::path& path, const Matrix<double>& m);

// Binary: "SSLS", u64 rows, u64 cols, rows*cols little-endian f64 in row-major order.
Matrix<double> read_binary(std::istream& in);
Matrix<double> read_binary(const std::filesystem::path& path);
void write_binary(std::ostream& out, const Matrix<double>& m);
void write_binary(const std::filesystem::path& path, const Matrix<double>& m);

// Picks the binary reader when the file starts with the magic bytes.
Matrix<double> read_matrix(const std::filesystem::path& path);

}  // namespace gpg::io

#endif  // GPG_IO_HPP
