#include "gpg/bench/pbn.hpp"

#include <cmath>
#include <string>

namespace gpg::bench {

namespace {

Matrix<double> make8(std::initializer_list<double> rows) {
  Matrix<double> m(8, 8);
  auto it = rows.begin();
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) m(i, j) = *it++;
  }
  return m;
}

}  // namespace

const Matrix<double>& pbn_p1() {
  static const Matrix<double> p = make8({
      0.1200, 0,      0.6000, 0.4200, 0,      0,      0,      0,
      0.2800, 0,      0,      0.1800, 0,      0,      0,      0,
      0,      0.4000, 0,      0,      0.4000, 0.1800, 0,      0,
      0,      0,      0,      0,      0,      0.4200, 0,      0.6000,
      0.1800, 0,      0.4000, 0.2800, 0,      0,      0,      0,
      0.4200, 0,      0,      0.1200, 0,      0,      0,      0,
      0,      0.6000, 0,      0,      0.6000, 0.1200, 0,      0,
      0,      0,      0,      0,      0,      0.2800, 1.0000, 0.4000,
  });
  return p;
}

const Matrix<double>& pbn_p2() {
  static const Matrix<double> p = make8({
      0.5672, 0.4328, 0.2881, 0,      0.1447, 0,      0.4328, 0,
      0,      0,      0.1447, 0,      0.2881, 0,      0,      0,
      0,      0,      0,      0,      0,      0,      0,      0.3776,
      0,      0,      0,      0.4328, 0,      0,      0,      0.1896,
      0.4328, 0.5672, 0.3376, 0,      0.1896, 0,      0.5672, 0,
      0,      0,      0.1896, 0,      0.3776, 0,      0,      0,
      0,      0,      0,      0,      0,      0.6657, 0,      0.2881,
      0,      0,      0,      0.5672, 0,      0.3343, 0,      0.1447,
  });
  return p;
}

std::vector<Eigen::Index> PbnInstance::network(Eigen::Index index) const {
  if (index < 0 || index >= n_bn) throw InputError("PbnInstance::network: index out of range");
  std::vector<Eigen::Index> rows(supports.size());
  for (std::size_t j = 0; j < supports.size(); ++j) {
    const auto radix = support_sizes[j];
    rows[j] = supports[j][static_cast<std::size_t>(index % radix)];
    index /= radix;
  }
  return rows;
}

PbnInstance build_pbn(const Matrix<double>& p, Eigen::Index max_networks) {
  if (p.rows() < 1 || p.cols() < 1) throw DimensionError("build_pbn: empty matrix");
  require_finite(p, "build_pbn");
  if ((p.array() < 0).any()) throw InputError("build_pbn: negative probability");

  PbnInstance out;
  out.p = p;
  out.n_bn = 1;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (p(i, j) != 0.0) rows.push_back(i);
    }
    if (rows.empty()) throw InputError("build_pbn: column " + std::to_string(j) + " is zero");
    const auto size = static_cast<Eigen::Index>(rows.size());
    if (out.n_bn > max_networks / size) {
      throw SizeError("build_pbn: more than " + std::to_string(max_networks) + " networks");
    }
    out.n_bn *= size;
    out.support_sizes.push_back(size);
    out.supports.push_back(std::move(rows));
    out.column_sum_deviation = std::max(out.column_sum_deviation, std::abs(1.0 - p.col(j).sum()));
  }

  const Eigen::Index m = p.rows();
  out.a = Matrix<double>::Zero(m * p.cols(), out.n_bn);
  for (Eigen::Index k = 0; k < out.n_bn; ++k) {
    const auto rows = out.network(k);
    for (Eigen::Index j = 0; j < p.cols(); ++j) out.a(j * m + rows[static_cast<std::size_t>(j)], k) = 1.0;
  }
  out.b = p.reshaped();
  return out;
}

Vector<double> stationary_d1() {
  Vector<double> d(8);
  d << 0.1282, 0.2139, 0.0667, 0.1766, 0.1758, 0.0887, 0.1324, 0.0177;
  return d;
}

MatrixInstance<double> stationary_instance() {
  return MatrixInstance<double>::row_stochastic(stationary_d1().transpose());
}

}  // namespace gpg::bench
