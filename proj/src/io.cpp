#include "gpg/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gpg::io {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'S', 'L', 'S'};

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot create " + path.string());
  return out;
}

double parse_field(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw FormatError("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

// Little-endian on disk regardless of host order.
template <typename T>
void put_le(std::ostream& out, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw FormatError("binary matrix: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

void check_finite(const Matrix<double>& m, const char* what) {
  if (!m.allFinite()) throw FormatError(std::string(what) + ": non-finite entry");
}

}  // namespace

Matrix<double> read_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      values.push_back(parse_field(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw FormatError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(cols) + " fields, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw FormatError("csv: no data");
  Matrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
    }
  }
  check_finite(m, "csv");
  return m;
}

Matrix<double> read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Matrix<double>& m) {
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Matrix<double>& m) {
  auto out = open_out(path);
  write_csv(out, m);
}

Matrix<double> read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("binary matrix: bad magic");
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  if (rows == 0 || cols == 0 || rows > (std::uint64_t{1} << 31) || cols > (std::uint64_t{1} << 31)) {
    throw FormatError("binary matrix: bad dimensions");
  }
  Matrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = get_le<double>(in);
  }
  check_finite(m, "binary matrix");
  return m;
}

Matrix<double> read_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_binary(in);
}

void write_binary(std::ostream& out, const Matrix<double>& m) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_le<double>(out, m(i, j));
  }
}

void write_binary(const std::filesystem::path& path, const Matrix<double>& m) {
  auto out = open_out(path);
  write_binary(out, m);
}

Matrix<double> read_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary(in) : read_csv(in);
}

}  // namespace gpg::io
