#ifndef GPG_PROX_HPP
#define GPG_PROX_HPP

#include "gpg/core.hpp"

#include <cmath>
#include <optional>

namespace gpg {

// Global minimizer over the unit sphere of
//
//   <y - d, grad> + 1/(2 alpha) ||y - d||^2 + lambda ||y||_1.
//
// With z = d - alpha grad, v = sign(z) (+1 at zero) and w_j = lambda - |z_j| / alpha,
// the objective restricted to sign-compatible y reduces to sum_j w_j |y_j|. If w >= 0
// a unit spike at argmin w is optimal; otherwise y = -(w_- / ||w_-||) . v with
// w_- = min(0, w).

enum class ProxBranch { SingleSpike, Scaled };

template <typename Scalar>
struct ProxInput {
  Vector<Scalar> d;
  Vector<Scalar> grad;
  Scalar alpha{1};
  Scalar lambda{0};
};

template <typename Scalar>
struct ProxSolution {
  Vector<Scalar> y;
  ProxBranch branch{ProxBranch::Scaled};
  Vector<Scalar> z;
  Vector<Scalar> w;
  Vector<Scalar> v;
  std::optional<Eigen::Index> spike_index;
  // z == 0 and lambda == 0: every unit vector is optimal, e_1 is returned.
  bool degenerate{false};
};

inline constexpr double kProxUnitTol = 1e-9;
inline constexpr double kProxUnderflow = 1e-300;

namespace detail {

// Writes the minimizer into `y` without validating the inputs. Returns the branch
// taken and, for SingleSpike, the spike index through `spike`.
template <typename Scalar>
ProxBranch prox_sphere_l1_into(const VectorRef<Scalar>& d, const VectorRef<Scalar>& grad,
                               Scalar alpha, Scalar lambda, Eigen::Ref<Vector<Scalar>> y,
                               Eigen::Index* spike, Vector<Scalar>* z_out = nullptr,
                               Vector<Scalar>* w_out = nullptr,
                               Vector<Scalar>* v_out = nullptr) {
  const Eigen::Index n = d.size();
  Vector<Scalar> z = d - alpha * grad;
  Vector<Scalar> v(n);
  Vector<Scalar> w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v[j] = z[j] >= Scalar(0) ? Scalar(1) : Scalar(-1);
    w[j] = lambda - std::abs(z[j]) / alpha;
  }

  Eigen::Index t = 0;
  const Scalar w_min = w.minCoeff(&t);  // first index on ties
  Scalar neg_norm = 0;
  if (w_min < Scalar(0)) neg_norm = w.cwiseMin(Scalar(0)).norm();

  ProxBranch branch;
  if (w_min >= Scalar(0) || neg_norm < Scalar(kProxUnderflow)) {
    y.setZero();
    y[t] = v[t];
    *spike = t;
    branch = ProxBranch::SingleSpike;
  } else {
    for (Eigen::Index j = 0; j < n; ++j) {
      y[j] = w[j] < Scalar(0) ? -(w[j] / neg_norm) * v[j] : Scalar(0);
    }
    branch = ProxBranch::Scaled;
  }
  if (z_out) *z_out = std::move(z);
  if (w_out) *w_out = std::move(w);
  if (v_out) *v_out = std::move(v);
  return branch;
}

}  // namespace detail

template <typename Scalar>
ProxSolution<Scalar> prox_sphere_l1(const ProxInput<Scalar>& in) {
  require_same_size(in.d.size(), in.grad.size(), "prox_sphere_l1");
  if (in.d.size() == 0) throw DimensionError("prox_sphere_l1: empty input");
  require_finite(in.d, "prox_sphere_l1: d");
  require_finite(in.grad, "prox_sphere_l1: grad");
  if (!(in.alpha > Scalar(0)) || !std::isfinite(in.alpha)) {
    throw InputError("prox_sphere_l1: alpha must be positive");
  }
  if (!(in.lambda >= Scalar(0)) || !std::isfinite(in.lambda)) {
    throw InputError("prox_sphere_l1: lambda must be nonnegative");
  }
  if (std::abs(in.d.squaredNorm() - Scalar(1)) > Scalar(kProxUnitTol)) {
    throw InputError("prox_sphere_l1: d is not on the unit sphere");
  }

  ProxSolution<Scalar> out;
  out.y.resize(in.d.size());
  Eigen::Index spike = 0;
  out.branch = detail::prox_sphere_l1_into<Scalar>(in.d, in.grad, in.alpha, in.lambda, out.y,
                                                   &spike, &out.z, &out.w, &out.v);
  if (out.branch == ProxBranch::SingleSpike) out.spike_index = spike;
  out.degenerate = in.lambda == Scalar(0) && out.z.isZero(0);
  return out;
}

// y_j z_j >= -1e-12 for every j.
template <typename DerivedY, typename DerivedZ>
bool check_sign_compatibility(const Eigen::MatrixBase<DerivedY>& y,
                              const Eigen::MatrixBase<DerivedZ>& z) {
  require_same_size(y.size(), z.size(), "check_sign_compatibility");
  using Scalar = typename DerivedY::Scalar;
  return (y.array() * z.array()).minCoeff() >= Scalar(-1e-12);
}

// Value of the linearized subproblem (without the constant f(d)) at y.
template <typename Scalar>
Scalar prox_objective(const ProxInput<Scalar>& in, const VectorRef<Scalar>& y) {
  return (y - in.d).dot(in.grad) + (y - in.d).squaredNorm() / (Scalar(2) * in.alpha) +
         in.lambda * y.template lpNorm<1>();
}

}  // namespace gpg

#endif  // GPG_PROX_HPP
