#ifndef GPG_BENCH_PBN_HPP
#define GPG_BENCH_PBN_HPP

#include "gpg/core.hpp"
#include "gpg/oblique.hpp"

#include <stdexcept>
#include <vector>

namespace gpg::bench {

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Prescribed 8 x 8 transition matrices of the two three-gene networks.
const Matrix<double>& pbn_p1();
const Matrix<double>& pbn_p2();

// Mixture of deterministic Boolean networks reproducing p: a has one column vec(P_i)
// (column-major) per network P_i, a 0/1 matrix choosing one supported row in every column
// of p. Networks are enumerated mixed-radix with column 0 as the fastest digit.
struct PbnInstance {
  Matrix<double> p;
  std::vector<std::vector<Eigen::Index>> supports;  // nonzero rows of each column
  std::vector<Eigen::Index> support_sizes;
  Eigen::Index n_bn{0};
  Matrix<double> a;
  Vector<double> b;
  // max_j |1 - sum_i p_ij|; recorded rather than enforced.
  double column_sum_deviation{0};

  ProblemInstance<double> problem() const { return {a, b}; }
  // Row index chosen in every column by network `index`.
  std::vector<Eigen::Index> network(Eigen::Index index) const;
};

inline constexpr Eigen::Index kMaxNetworks = 1000000;

PbnInstance build_pbn(const Matrix<double>& p, Eigen::Index max_networks = kMaxNetworks);

// Stationary distribution of the transition-matrix construction problem.
Vector<double> stationary_d1();

// 1/2 ||D X - D||_F^2 over row-stochastic 8 x 8 X, D = d1^T.
MatrixInstance<double> stationary_instance();

}  // namespace gpg::bench

#endif  // GPG_BENCH_PBN_HPP
