#include "gpg/bench/metrics.hpp"

#include "gpg/simplex.hpp"

#include <cmath>
#include <limits>

namespace gpg::bench {

double rsnr(const Vector<double>& x_star, const Vector<double>& x_hat) {
  require_same_size(x_star.size(), x_hat.size(), "rsnr");
  const double err = (x_star - x_hat).squaredNorm();
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(x_star.squaredNorm() / err);
}

double rres(const Vector<double>& d, const Matrix<double>& x_hat) {
  require_same_size(d.size(), x_hat.rows(), "rres: rows(X)");
  require_same_size(d.size(), x_hat.cols(), "rres: cols(X)");
  const Vector<double> r = x_hat.transpose() * d - d;
  return r.norm() / d.norm();
}

double simplex_objective(const ProblemInstance<double>& inst, const Vector<double>& x) {
  require_same_size(x.size(), inst.cols(), "simplex_objective");
  return 0.5 * (inst.a() * x - inst.b()).squaredNorm();
}

double matrix_objective(const MatrixInstance<double>& inst, const Matrix<double>& x) {
  require_same_size(x.rows(), inst.unknown_rows(), "matrix_objective: rows(X)");
  require_same_size(x.cols(), inst.unknown_cols(), "matrix_objective: cols(X)");
  return 0.5 * (inst.a() * x - inst.b()).squaredNorm();
}

double kkt_residual_matrix(const MatrixInstance<double>& inst, const Matrix<double>& x) {
  require_same_size(x.rows(), inst.unknown_rows(), "kkt_residual_matrix: rows(X)");
  require_same_size(x.cols(), inst.unknown_cols(), "kkt_residual_matrix: cols(X)");
  const Matrix<double> step = x - (inst.ata() * x - inst.atb());
  Matrix<double> proj(x.rows(), x.cols());
  if (inst.row_blocks()) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) proj.row(i) = project_simplex(step.row(i)).transpose();
  } else {
    for (Eigen::Index j = 0; j < x.cols(); ++j) proj.col(j) = project_simplex(step.col(j));
  }
  return (x - proj).norm();
}

}  // namespace gpg::bench
