#ifndef GPG_BENCH_RANDOM_HPP
#define GPG_BENCH_RANDOM_HPP

#include "gpg/core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gpg::bench {

// Platform-independent sampling over std::mt19937_64, whose output sequence is fixed by
// the standard. Uniforms take the top 53 bits; normals use the Box-Muller transform
// (both values of a pair are consumed in order).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1).
  double uniform();
  double normal();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // k distinct indices from [0, n) via a partial Fisher-Yates shuffle, in draw order.
  std::vector<Eigen::Index> sample_without_replacement(Eigen::Index n, Eigen::Index k);

  Matrix<double> gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  Vector<double> gaussian_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  double spare_{0};
  bool has_spare_{false};
};

}  // namespace gpg::bench

#endif  // GPG_BENCH_RANDOM_HPP
