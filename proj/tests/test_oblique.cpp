#include "gpg/oblique.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using gpg::GpgParams;
using gpg::Matrix;
using gpg::MatrixInstance;
using gpg::ObliqueIterate;
using gpg::Orientation;
using gpg::Vector;

namespace {

ObliqueIterate<double> random_iterate(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c,
                                      Orientation o) {
  ObliqueIterate<double> y{oracle::gaussian(rng, r, c), o};
  if (o == Orientation::RowStochastic) {
    for (Eigen::Index i = 0; i < r; ++i) y.y.row(i).normalize();
  } else {
    for (Eigen::Index j = 0; j < c; ++j) y.y.col(j).normalize();
  }
  return y;
}

// Each block scaled into the unit ball.
Matrix<double> in_ball_blocks(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, bool rows) {
  Matrix<double> y(r, c);
  if (rows) {
    for (Eigen::Index i = 0; i < r; ++i) y.row(i) = oracle::in_ball(rng, c).transpose();
  } else {
    for (Eigen::Index j = 0; j < c; ++j) y.col(j) = oracle::in_ball(rng, r);
  }
  return y;
}

double naive_p(const Matrix<double>& a, const Matrix<double>& b, const Matrix<double>& y) {
  double total = 0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) total += oracle::naive_f(a, y.col(j), b.col(j));
  return total;
}

}  // namespace

TEST(MatrixInstance, Validation) {
  EXPECT_THROW(MatrixInstance<double>(Matrix<double>::Ones(3, 2), Matrix<double>::Ones(2, 2),
                                      Orientation::ColumnStochastic),
               gpg::DimensionError);
  EXPECT_THROW(MatrixInstance<double>(Matrix<double>::Ones(3, 2), Matrix<double>::Ones(3, 4),
                                      Orientation::RowStochastic),
               gpg::DimensionError);
  Matrix<double> bad = Matrix<double>::Ones(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(MatrixInstance<double>::row_stochastic(bad), gpg::InputError);
}

TEST(GradientP, ZeroAtOrigin) {
  std::mt19937_64 rng(1);
  const MatrixInstance<double> inst(oracle::gaussian(rng, 4, 5), oracle::gaussian(rng, 4, 3),
                                    Orientation::ColumnStochastic);
  const ObliqueIterate<double> y{Matrix<double>::Zero(5, 3), Orientation::ColumnStochastic};
  EXPECT_TRUE(gpg::gradient_p(inst, y).isZero(0));
}

TEST(GradientP, ZeroAtExactFit) {
  std::mt19937_64 rng(2);
  const auto y = random_iterate(rng, 4, 4, Orientation::ColumnStochastic);
  const MatrixInstance<double> inst(Matrix<double>::Identity(4, 4), y.y.cwiseAbs2(),
                                    Orientation::ColumnStochastic);
  EXPECT_LT(gpg::gradient_p(inst, y).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(gpg::objective_p(inst, y), 1e-30);
}

TEST(GradientP, MatchesCentralDifferencesColumn) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const Matrix<double> a = oracle::gaussian(rng, 4, 4), b = oracle::gaussian(rng, 4, 4);
    const MatrixInstance<double> inst(a, b, Orientation::ColumnStochastic);
    for (int k = 0; k < 20; ++k) {
      const auto y = random_iterate(rng, 4, 4, Orientation::ColumnStochastic);
      const Vector<double> flat = y.y.reshaped();
      const Vector<double> fd = oracle::central_difference(
          [&](const oracle::Vec& v) { return naive_p(a, b, v.reshaped(4, 4)); }, flat);
      const Vector<double> g = gpg::gradient_p(inst, y).reshaped();
      EXPECT_LE((g - fd).norm(), 1e-6 * std::max(1.0, fd.norm()));
    }
  }
}

TEST(GradientP, MatchesCentralDifferencesRow) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const Matrix<double> d = oracle::gaussian(rng, 3, 5);
    const auto inst = MatrixInstance<double>::row_stochastic(d);
    for (int k = 0; k < 20; ++k) {
      const auto y = random_iterate(rng, 5, 5, Orientation::RowStochastic);
      const Vector<double> flat = y.y.reshaped();
      const Vector<double> fd = oracle::central_difference(
          [&](const oracle::Vec& v) {
            const Matrix<double> x = v.reshaped(5, 5).cwiseAbs2();
            return 0.5 * (d * x - d).squaredNorm();
          },
          flat);
      const Vector<double> g = gpg::gradient_p(inst, y).reshaped();
      EXPECT_LE((g - fd).norm(), 1e-6 * std::max(1.0, fd.norm()));
    }
  }
}

TEST(GradientP, RejectsMismatch) {
  const MatrixInstance<double> inst(Matrix<double>::Identity(2, 2), Matrix<double>::Zero(2, 3),
                                    Orientation::ColumnStochastic);
  EXPECT_THROW(gpg::gradient_p(inst, ObliqueIterate<double>::uniform(3, 3, Orientation::ColumnStochastic)),
               gpg::DimensionError);
  EXPECT_THROW(gpg::gradient_p(inst, ObliqueIterate<double>::uniform(2, 3, Orientation::RowStochastic)),
               gpg::InputError);
}

TEST(LipschitzP, Examples) {
  const MatrixInstance<double> col(Matrix<double>::Identity(2, 2), Matrix<double>::Zero(2, 2),
                                   Orientation::ColumnStochastic);
  EXPECT_NEAR(gpg::lipschitz_bound_matrix(col), 12.0, 1e-12);
  const auto row = MatrixInstance<double>::row_stochastic(Matrix<double>::Identity(2, 2));
  EXPECT_NEAR(gpg::lipschitz_bound_matrix(row), 12.0 + 2 * std::sqrt(2.0), 1e-12);
}

TEST(LipschitzP, HoldsOnSampledPairs) {
  std::mt19937_64 rng(5);
  for (const auto o : {Orientation::ColumnStochastic, Orientation::RowStochastic}) {
    const bool rows = o == Orientation::RowStochastic;
    const MatrixInstance<double> inst =
        rows ? MatrixInstance<double>::row_stochastic(oracle::gaussian(rng, 4, 6))
             : MatrixInstance<double>(oracle::gaussian(rng, 4, 6), oracle::gaussian(rng, 4, 3), o);
    const double l = gpg::lipschitz_bound_matrix(inst);
    const Eigen::Index r = inst.unknown_rows(), c = inst.unknown_cols();
    for (int k = 0; k < 1000; ++k) {
      const ObliqueIterate<double> y1{in_ball_blocks(rng, r, c, rows), o};
      const ObliqueIterate<double> y2{in_ball_blocks(rng, r, c, rows), o};
      const double lhs = (gpg::gradient_p(inst, y1) - gpg::gradient_p(inst, y2)).norm();
      EXPECT_LE(lhs, l * (y1.y - y2.y).norm() * (1 + 1e-12));
    }
  }
}

TEST(GpgMatrix, SingleColumnMatchesVectorSolverBitwise) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 3; ++t) {
    const Matrix<double> a = oracle::gaussian(rng, 6, 9);
    const Vector<double> b = oracle::gaussian(rng, 6);
    const gpg::ProblemInstance<double> vec(a, b);
    const MatrixInstance<double> mat(a, b, Orientation::ColumnStochastic);
    GpgParams<double> p;
    p.alpha0 = 0.5;
    // Pin the floor: the two Lipschitz constants differ (6 n vs 6).
    p.gamma1 = 1e-3;
    const auto rv = gpg::gpg_solve(vec, p, gpg::uniform_sphere_point<double>(9));
    const auto rm = gpg::gpg_solve_matrix(mat, p, ObliqueIterate<double>::uniform(9, 1, Orientation::ColumnStochastic));
    EXPECT_EQ(rv.iterations, rm.iterations);
    EXPECT_EQ(rv.f_history, rm.f_history);
    EXPECT_EQ(rv.y, Vector<double>(rm.y.col(0)));
    EXPECT_EQ(rv.lambda_final, rm.lambda_final);
  }
}

TEST(GpgMatrix, ProxIsSeparable) {
  std::mt19937_64 rng(7);
  for (const auto o : {Orientation::ColumnStochastic, Orientation::RowStochastic}) {
    const bool rows = o == Orientation::RowStochastic;
    const MatrixInstance<double> inst =
        rows ? MatrixInstance<double>::row_stochastic(oracle::gaussian(rng, 3, 5))
             : MatrixInstance<double>(oracle::gaussian(rng, 4, 5), oracle::gaussian(rng, 4, 3), o);
    const auto y = random_iterate(rng, inst.unknown_rows(), inst.unknown_cols(), o);
    const Matrix<double> g = gpg::gradient_p(inst, y);
    const Matrix<double> out = gpg::oblique_prox(inst, y, g, 0.3, 0.05);
    const Eigen::Index blocks = rows ? y.y.rows() : y.y.cols();
    for (Eigen::Index j = 0; j < blocks; ++j) {
      gpg::ProxInput<double> in;
      in.d = rows ? Vector<double>(y.y.row(j).transpose()) : Vector<double>(y.y.col(j));
      in.grad = rows ? Vector<double>(g.row(j).transpose()) : Vector<double>(g.col(j));
      in.alpha = 0.3;
      in.lambda = 0.05;
      const Vector<double> ref = gpg::prox_sphere_l1(in).y;
      const Vector<double> got = rows ? Vector<double>(out.row(j).transpose()) : Vector<double>(out.col(j));
      EXPECT_LT((got - ref).norm(), 1e-15);
    }
  }
}

TEST(GpgMatrix, ColumnStochasticOutputAndMonotonicity) {
  std::mt19937_64 rng(8);
  const MatrixInstance<double> inst(oracle::gaussian(rng, 6, 8), oracle::gaussian(rng, 6, 3),
                                    Orientation::ColumnStochastic);
  GpgParams<double> p;
  p.alpha0 = 0.2;
  p.trace = true;
  p.it_max = 500;
  const auto r = gpg::gpg_solve_matrix(inst, p, ObliqueIterate<double>::uniform(8, 3, Orientation::ColumnStochastic));
  EXPECT_LT((r.x.colwise().sum().array() - 1).abs().maxCoeff(), 1e-9);
  EXPECT_GE(r.x.minCoeff(), -1e-12);
  for (int k = 0; k < r.iterations; ++k) {
    const double step = r.history[k].step_norm;
    EXPECT_LE(r.f_history[k + 1], r.f_history[k] - 0.5 * p.gamma2 * step * step + 1e-12);
    const ObliqueIterate<double> it{r.trace[k + 1], Orientation::ColumnStochastic};
    EXPECT_TRUE(it.feasible(1e-12));
  }
}

TEST(GpgMatrix, RowStochasticOutput) {
  std::mt19937_64 rng(9);
  Matrix<double> d = oracle::gaussian(rng, 2, 6).cwiseAbs();
  const auto inst = MatrixInstance<double>::row_stochastic(d);
  GpgParams<double> p;
  p.alpha0 = 0.5;
  p.it_max = 500;
  const auto r = gpg::gpg_solve_matrix(inst, p, ObliqueIterate<double>::uniform(6, 6, Orientation::RowStochastic));
  EXPECT_LT((r.x.rowwise().sum().array() - 1).abs().maxCoeff(), 1e-9);
  EXPECT_GE(r.x.minCoeff(), -1e-12);
}

TEST(GpgMatrix, IdentityTargetReachesZero) {
  const auto inst = MatrixInstance<double>::row_stochastic(Matrix<double>::Identity(3, 3));
  GpgParams<double> p;
  p.alpha0 = 0.5;
  p.lambda0 = 1e-3;
  p.tol = 1e-12;
  p.it_max = 5000;
  const auto r = gpg::gpg_solve_matrix(inst, p, ObliqueIterate<double>::uniform(3, 3, Orientation::RowStochastic));
  EXPECT_LE(0.5 * (r.x - Matrix<double>::Identity(3, 3)).squaredNorm(), 1e-8);
}

TEST(GpgMatrix, RejectsInfeasibleStart) {
  const auto inst = MatrixInstance<double>::row_stochastic(Matrix<double>::Identity(2, 2));
  const ObliqueIterate<double> y{Matrix<double>::Ones(2, 2), Orientation::RowStochastic};
  EXPECT_FALSE(y.feasible());
  EXPECT_THROW(gpg::gpg_solve_matrix(inst, GpgParams<double>{}, y), gpg::InputError);
}
