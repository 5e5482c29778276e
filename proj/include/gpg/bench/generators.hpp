#ifndef GPG_BENCH_GENERATORS_HPP
#define GPG_BENCH_GENERATORS_HPP

#include "gpg/core.hpp"

#include <cstdint>

namespace gpg::bench {

class Rng;

struct GeneratedInstance {
  ProblemInstance<double> instance;
  Vector<double> x_star;
  // 10 log10(||A x*||^2 / ||b - A x*||^2); +inf without noise.
  double snr_db;
};

// Sparse x* on the simplex: |xbar| / ||xbar||_1 with k Gaussian entries at uniformly
// drawn positions.
Vector<double> sparse_simplex_point(Rng& rng, Eigen::Index n, Eigen::Index k);

// m = 20 j, n = 300 j, 5% nonzeros, b = A x* + nu e with nu = 1e-3 ||A x*|| / ||e||.
GeneratedInstance gen_lasso(int j, std::uint64_t seed);

// 224 x 440, 2% nonzeros, noise scaled so that the realized SNR equals snr_db.
// snr_db = +inf gives b = A x*.
GeneratedInstance gen_hyperspectral(double snr_db, std::uint64_t seed);

}  // namespace gpg::bench

#endif  // GPG_BENCH_GENERATORS_HPP
