#ifndef GPG_BENCH_METRICS_HPP
#define GPG_BENCH_METRICS_HPP

#include "gpg/core.hpp"
#include "gpg/oblique.hpp"

namespace gpg::bench {

inline constexpr double kDefaultNnzEps = 1e-6;

// 10 log10(||x*||^2 / ||x* - x_hat||^2); +inf when x_hat == x*.
double rsnr(const Vector<double>& x_star, const Vector<double>& x_hat);

// ||d^T X - d^T|| / ||d||.
double rres(const Vector<double>& d, const Matrix<double>& x_hat);

// 1/2 ||A x - b||^2.
double simplex_objective(const ProblemInstance<double>& inst, const Vector<double>& x);

// 1/2 ||A X - B||_F^2.
double matrix_objective(const MatrixInstance<double>& inst, const Matrix<double>& x);

// ||X - P(X - grad)||_F with P the blockwise simplex projection.
double kkt_residual_matrix(const MatrixInstance<double>& inst, const Matrix<double>& x);

}  // namespace gpg::bench

#endif  // GPG_BENCH_METRICS_HPP
