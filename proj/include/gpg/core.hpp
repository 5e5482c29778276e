#ifndef GPG_CORE_HPP
#define GPG_CORE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace gpg {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Non-deduced so that Scalar comes from the other arguments (instances, params).
template <typename Scalar>
using VectorRef = Eigen::Ref<const Vector<std::type_identity_t<Scalar>>>;

template <typename Scalar>
using MatrixRef = Eigen::Ref<const Matrix<std::type_identity_t<Scalar>>>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tolerance of the unit-sphere indicator in the composite objective.
inline constexpr double kFeasibilityTol = 1e-9;

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& m, const std::string& what) {
  if (!m.allFinite()) throw InputError(what + ": non-finite entry");
}

inline void require_same_size(Eigen::Index a, Eigen::Index b, const std::string& what) {
  if (a != b) {
    throw DimensionError(what + ": size mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

template <typename DerivedU, typename DerivedV>
auto hadamard(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v) {
  require_same_size(u.size(), v.size(), "hadamard");
  using Scalar = typename DerivedU::Scalar;
  return Vector<Scalar>(u.cwiseProduct(v));
}

// Least squares data (A, b) with A^T A and A^T b computed once. Immutable.
template <typename Scalar>
class ProblemInstance {
 public:
  ProblemInstance(Matrix<Scalar> a, Vector<Scalar> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() < 1 || a_.cols() < 1) throw DimensionError("ProblemInstance: empty matrix");
    require_same_size(a_.rows(), b_.size(), "ProblemInstance: rows(A) vs len(b)");
    require_finite(a_, "ProblemInstance: A");
    require_finite(b_, "ProblemInstance: b");
    ata_.noalias() = a_.transpose() * a_;
    atb_.noalias() = a_.transpose() * b_;
  }

  const Matrix<Scalar>& a() const { return a_; }
  const Vector<Scalar>& b() const { return b_; }
  const Matrix<Scalar>& ata() const { return ata_; }
  const Vector<Scalar>& atb() const { return atb_; }
  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }

 private:
  Matrix<Scalar> a_;
  Vector<Scalar> b_;
  Matrix<Scalar> ata_;
  Vector<Scalar> atb_;
};

namespace detail {

// 1/2 ||A (y.y) - b||^2 for a single column; shared by the vector and matrix models
// so that both follow the same floating-point path.
template <typename Scalar>
Scalar half_residual_sq(const Matrix<Scalar>& a, const VectorRef<Scalar>& y,
                        const VectorRef<Scalar>& b) {
  const Vector<Scalar> x = y.cwiseProduct(y);
  Vector<Scalar> r = b;
  r.noalias() -= a * x;  // sign is irrelevant under the norm
  return Scalar(0.5) * r.squaredNorm();
}

// 2 (A^T A (y.y) - A^T b) . y for a single column.
template <typename Scalar>
Vector<Scalar> squared_gradient(const Matrix<Scalar>& ata, const VectorRef<Scalar>& atb,
                                const VectorRef<Scalar>& y) {
  const Vector<Scalar> x = y.cwiseProduct(y);
  Vector<Scalar> g = -atb;
  g.noalias() += ata * x;
  return Scalar(2) * g.cwiseProduct(y);
}

}  // namespace detail

template <typename Scalar>
Scalar objective_f(const ProblemInstance<Scalar>& inst, const VectorRef<Scalar>& y) {
  require_same_size(y.size(), inst.cols(), "objective_f");
  return detail::half_residual_sq<Scalar>(inst.a(), y, inst.b());
}

template <typename Scalar>
Vector<Scalar> gradient_f(const ProblemInstance<Scalar>& inst, const VectorRef<Scalar>& y) {
  require_same_size(y.size(), inst.cols(), "gradient_f");
  return detail::squared_gradient<Scalar>(inst.ata(), inst.atb(), y);
}

// f(y) + lambda ||y||_1 on the sphere, +inf off it.
template <typename Scalar>
Scalar objective_F(const ProblemInstance<Scalar>& inst, Scalar lambda,
                   const VectorRef<Scalar>& y,
                   Scalar feasibility_tol = Scalar(kFeasibilityTol)) {
  if (!(lambda >= Scalar(0))) throw InputError("objective_F: lambda must be nonnegative");
  require_same_size(y.size(), inst.cols(), "objective_F");
  if (std::abs(y.squaredNorm() - Scalar(1)) > feasibility_tol) {
    return std::numeric_limits<Scalar>::infinity();
  }
  return objective_f(inst, y) + lambda * y.template lpNorm<1>();
}

template <typename Scalar>
struct SpectralNormEstimate {
  Scalar value{0};
  int iterations{0};
  bool converged{false};
};

// Largest eigenvalue of a symmetric positive semidefinite matrix by power iteration.
// Starts from the normalized all-ones vector, falling back to e_1 when that start lies
// in the null space. Returns the best estimate with converged == false on stall.
template <typename Derived, typename Scalar = typename Derived::Scalar>
SpectralNormEstimate<Scalar> spectral_norm_sym(const Eigen::MatrixBase<Derived>& m,
                                               Scalar tol = Scalar(1e-10), int max_iter = 10000) {
  if (m.rows() != m.cols()) throw DimensionError("spectral_norm_sym: matrix is not square");
  const Eigen::Index n = m.rows();
  SpectralNormEstimate<Scalar> out;
  if (n == 0) {
    out.converged = true;
    return out;
  }

  Vector<Scalar> v = Vector<Scalar>::Ones(n) / std::sqrt(Scalar(n));
  Vector<Scalar> mv = m * v;
  if (mv.norm() == Scalar(0)) {
    v = Vector<Scalar>::Unit(n, 0);
    mv = m * v;
    if (mv.norm() == Scalar(0)) {
      out.converged = true;
      return out;
    }
  }

  Scalar estimate = v.dot(mv);
  for (int it = 1; it <= max_iter; ++it) {
    const Scalar norm = mv.norm();
    if (norm == Scalar(0)) break;
    v = mv / norm;
    mv.noalias() = m * v;
    const Scalar next = v.dot(mv);
    out.iterations = it;
    if (std::abs(next - estimate) <= tol * std::abs(next)) {
      out.value = next;
      out.converged = true;
      return out;
    }
    estimate = next;
  }
  out.value = estimate;
  return out;
}

template <typename Scalar>
struct LipschitzBound {
  Scalar value{0};
  bool spectral_converged{true};
};

// L_f = 6 ||A^T A||_2 + 2 ||A^T b||, valid for the gradient of f on the closed unit ball.
template <typename Scalar>
LipschitzBound<Scalar> lipschitz_bound(const ProblemInstance<Scalar>& inst) {
  const auto sn = spectral_norm_sym(inst.ata());
  return {Scalar(6) * sn.value + Scalar(2) * inst.atb().norm(), sn.converged};
}

}  // namespace gpg

#endif  // GPG_CORE_HPP
