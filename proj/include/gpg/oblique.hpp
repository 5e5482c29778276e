#ifndef GPG_OBLIQUE_HPP
#define GPG_OBLIQUE_HPP

#include "gpg/core.hpp"
#include "gpg/solver.hpp"

#include <cmath>

namespace gpg {

// Stochastic-matrix regression  min 1/2 ||A X - B||_F^2  with X = Y.Y and Y on an oblique
// manifold. ColumnStochastic: unit columns, 1^T X = 1^T. RowStochastic: unit rows,
// X 1 = 1; here A = B = D collects the prescribed stationary row vectors.
enum class Orientation { ColumnStochastic, RowStochastic };

template <typename Scalar>
class MatrixInstance {
 public:
  MatrixInstance(Matrix<Scalar> a, Matrix<Scalar> b, Orientation orientation)
      : a_(std::move(a)), b_(std::move(b)), orientation_(orientation) {
    if (a_.rows() < 1 || a_.cols() < 1 || b_.cols() < 1) {
      throw DimensionError("MatrixInstance: empty matrix");
    }
    require_same_size(a_.rows(), b_.rows(), "MatrixInstance: rows(A) vs rows(B)");
    if (orientation_ == Orientation::RowStochastic) {
      require_same_size(a_.cols(), b_.cols(), "MatrixInstance: row-stochastic unknown must be square");
    }
    require_finite(a_, "MatrixInstance: A");
    require_finite(b_, "MatrixInstance: B");
    ata_.noalias() = a_.transpose() * a_;
    atb_.noalias() = a_.transpose() * b_;
  }

  // min 1/2 ||D X - D||_F^2 over row-stochastic X.
  static MatrixInstance row_stochastic(const Matrix<Scalar>& d) {
    return MatrixInstance(d, d, Orientation::RowStochastic);
  }

  const Matrix<Scalar>& a() const { return a_; }
  const Matrix<Scalar>& b() const { return b_; }
  const Matrix<Scalar>& ata() const { return ata_; }
  const Matrix<Scalar>& atb() const { return atb_; }
  Orientation orientation() const { return orientation_; }
  bool row_blocks() const { return orientation_ == Orientation::RowStochastic; }
  // Shape of the unknown Y (and X).
  Eigen::Index unknown_rows() const { return a_.cols(); }
  Eigen::Index unknown_cols() const { return b_.cols(); }

 private:
  Matrix<Scalar> a_;
  Matrix<Scalar> b_;
  Orientation orientation_;
  Matrix<Scalar> ata_;
  Matrix<Scalar> atb_;
};

template <typename Scalar>
struct ObliqueIterate {
  Matrix<Scalar> y;
  Orientation orientation{Orientation::ColumnStochastic};

  bool feasible(Scalar tol = Scalar(1e-12)) const {
    return detail::blocks_feasible<Scalar>(y, orientation == Orientation::RowStochastic, tol);
  }

  // Every entry 1/sqrt(n) with n the block length.
  static ObliqueIterate uniform(Eigen::Index rows, Eigen::Index cols, Orientation o) {
    const Eigen::Index n = o == Orientation::RowStochastic ? cols : rows;
    return {Matrix<Scalar>::Constant(rows, cols, Scalar(1) / std::sqrt(Scalar(n))), o};
  }
};

template <typename Scalar>
using MatrixSolveResult = BasicSolveResult<Scalar, Matrix<Scalar>>;

namespace detail {

inline void check_orientation(Orientation inst, Orientation iterate) {
  if (inst != iterate) throw InputError("oblique: iterate orientation does not match instance");
}

template <typename Scalar>
void check_unknown_shape(const MatrixInstance<Scalar>& inst, const Matrix<Scalar>& y,
                         const char* what) {
  require_same_size(y.rows(), inst.unknown_rows(), std::string(what) + ": rows(Y)");
  require_same_size(y.cols(), inst.unknown_cols(), std::string(what) + ": cols(Y)");
}

// Column-separable smooth part; each column goes through the same kernels as the vector
// problem, so a one-column instance reproduces the vector solver exactly.
template <typename Scalar>
struct ObliqueModel {
  const MatrixInstance<Scalar>& inst;

  bool row_blocks() const { return inst.row_blocks(); }
  Scalar value(const Matrix<Scalar>& y) const {
    Scalar total = half_residual_sq<Scalar>(inst.a(), y.col(0), inst.b().col(0));
    for (Eigen::Index j = 1; j < y.cols(); ++j) {
      total += half_residual_sq<Scalar>(inst.a(), y.col(j), inst.b().col(j));
    }
    return total;
  }
  Matrix<Scalar> gradient(const Matrix<Scalar>& y) const {
    Matrix<Scalar> g(y.rows(), y.cols());
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      g.col(j) = squared_gradient<Scalar>(inst.ata(), inst.atb().col(j), y.col(j));
    }
    return g;
  }
  Scalar lipschitz() const;
};

}  // namespace detail

// p(Y) = 1/2 ||A (Y.Y) - B||_F^2.
template <typename Scalar>
Scalar objective_p(const MatrixInstance<Scalar>& inst, const ObliqueIterate<Scalar>& y) {
  detail::check_orientation(inst.orientation(), y.orientation);
  detail::check_unknown_shape(inst, y.y, "objective_p");
  return detail::ObliqueModel<Scalar>{inst}.value(y.y);
}

// grad p(Y) = 2 (A^T A (Y.Y) - A^T B) . Y, for both orientations.
template <typename Scalar>
Matrix<Scalar> gradient_p(const MatrixInstance<Scalar>& inst, const ObliqueIterate<Scalar>& y) {
  detail::check_orientation(inst.orientation(), y.orientation);
  detail::check_unknown_shape(inst, y.y, "gradient_p");
  return detail::ObliqueModel<Scalar>{inst}.gradient(y.y);
}

// L_p = 6 n ||A^T A||_2 + 2 ||A^T B||_F, with n the row count of the unknown. For the
// row-stochastic problem A^T B = D^T D.
template <typename Scalar>
Scalar lipschitz_bound_matrix(const MatrixInstance<Scalar>& inst) {
  const auto sn = spectral_norm_sym(inst.ata());
  return Scalar(6) * Scalar(inst.unknown_rows()) * sn.value + Scalar(2) * inst.atb().norm();
}

template <typename Scalar>
Scalar detail::ObliqueModel<Scalar>::lipschitz() const {
  return lipschitz_bound_matrix(inst);
}

// One prox step of the matrix loop, assembled block by block.
template <typename Scalar>
Matrix<Scalar> oblique_prox(const MatrixInstance<Scalar>& inst, const ObliqueIterate<Scalar>& y,
                            const Matrix<Scalar>& grad, Scalar alpha, Scalar lambda) {
  detail::check_orientation(inst.orientation(), y.orientation);
  detail::check_unknown_shape(inst, y.y, "oblique_prox");
  Matrix<Scalar> out;
  detail::prox_blocks<Scalar>(y.y, grad, alpha, lambda, inst.row_blocks(), out);
  return out;
}

template <typename Scalar>
MatrixSolveResult<Scalar> gpg_solve_matrix(const MatrixInstance<Scalar>& inst,
                                           const GpgParams<Scalar>& params,
                                           const ObliqueIterate<Scalar>& y0) {
  detail::check_orientation(inst.orientation(), y0.orientation);
  detail::check_unknown_shape(inst, y0.y, "gpg_solve_matrix");
  return detail::run_gpg<Scalar>(detail::ObliqueModel<Scalar>{inst}, params, y0.y);
}

}  // namespace gpg

#endif  // GPG_OBLIQUE_HPP
