#include "gpg/bench/generators.hpp"

#include "gpg/bench/random.hpp"

#include <cmath>
#include <limits>

namespace gpg::bench {

namespace {

// Draw order: A (row by row), support, nonzero values, noise.
GeneratedInstance generate(Eigen::Index m, Eigen::Index n, double density, double snr_db,
                           double lasso_scale, std::uint64_t seed) {
  Rng rng(seed);
  Matrix<double> a = rng.gaussian_matrix(m, n);
  const auto k = static_cast<Eigen::Index>(std::lround(density * static_cast<double>(n)));
  Vector<double> x_star = sparse_simplex_point(rng, n, k);
  const Vector<double> clean = a * x_star;
  const Vector<double> e = rng.gaussian_vector(m);

  double nu = 0;
  if (lasso_scale > 0) {
    nu = lasso_scale * clean.norm() / e.norm();
  } else if (std::isfinite(snr_db)) {
    nu = clean.norm() / e.norm() * std::pow(10.0, -snr_db / 20.0);
  }
  Vector<double> b = clean + nu * e;
  const double noise = (b - clean).squaredNorm();
  const double snr = noise > 0 ? 10.0 * std::log10(clean.squaredNorm() / noise)
                               : std::numeric_limits<double>::infinity();
  return {ProblemInstance<double>(std::move(a), std::move(b)), std::move(x_star), snr};
}

}  // namespace

Vector<double> sparse_simplex_point(Rng& rng, Eigen::Index n, Eigen::Index k) {
  if (k < 1 || k > n) throw InputError("sparse_simplex_point: need 1 <= k <= n");
  const auto support = rng.sample_without_replacement(n, k);
  Vector<double> x = Vector<double>::Zero(n);
  for (const auto i : support) {
    double v = 0;
    do {
      v = std::abs(rng.normal());
    } while (v == 0.0);
    x(i) = v;
  }
  return x / x.sum();
}

GeneratedInstance gen_lasso(int j, std::uint64_t seed) {
  if (j < 1 || j > 5) throw InputError("gen_lasso: j must lie in 1..5");
  return generate(20 * j, 300 * j, 0.05, 0.0, 1e-3, seed);
}

GeneratedInstance gen_hyperspectral(double snr_db, std::uint64_t seed) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw InputError("gen_hyperspectral: snr_db must be finite or +inf");
  }
  return generate(224, 440, 0.02, snr_db, 0.0, seed);
}

}  // namespace gpg::bench
