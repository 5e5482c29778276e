#ifndef GPG_SIMPLEX_HPP
#define GPG_SIMPLEX_HPP

#include "gpg/core.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace gpg {

// Euclidean projection onto {x : 1^T x = 1, x >= 0} by sort and threshold.
template <typename Derived>
Vector<typename Derived::Scalar> project_simplex(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  if (n == 0) throw DimensionError("project_simplex: empty input");
  require_finite(v, "project_simplex");

  std::vector<Scalar> u(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = v(i);
  std::sort(u.begin(), u.end(), std::greater<Scalar>());

  Scalar cumulative = 0;
  Scalar theta = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += u[static_cast<std::size_t>(k)];
    const Scalar candidate = (cumulative - Scalar(1)) / Scalar(k + 1);
    if (u[static_cast<std::size_t>(k)] - candidate > Scalar(0)) theta = candidate;
  }

  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = std::max(v(i) - theta, Scalar(0));
  return x;
}

}  // namespace gpg

#endif  // GPG_SIMPLEX_HPP
