#include "gpg/core.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using gpg::Matrix;
using gpg::ProblemInstance;
using gpg::Vector;

namespace {

ProblemInstance<double> identity2(double b0, double b1) {
  Vector<double> b(2);
  b << b0, b1;
  return {Matrix<double>::Identity(2, 2), b};
}

// A_ij = cos(8 i + j), b_i = i / 10, y proportional to (1..8).
struct FixedInstance {
  Matrix<double> a{5, 8};
  Vector<double> b{5};
  Vector<double> y{8};
  FixedInstance() {
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 8; ++j) a(i, j) = std::cos(8.0 * i + j);
    for (int i = 0; i < 5; ++i) b(i) = 0.1 * i;
    for (int j = 0; j < 8; ++j) y(j) = j + 1.0;
    y.normalize();
  }
};

}  // namespace

TEST(Hadamard, Squares) {
  Vector<double> u(3);
  u << 1, 2, 3;
  const Vector<double> r = gpg::hadamard(u, u);
  EXPECT_EQ(r, (Vector<double>(3) << 1, 4, 9).finished());
}

TEST(Hadamard, ZeroAbsorbs) {
  Vector<double> u(4);
  u << 1.5, -2, 3, 7;
  EXPECT_TRUE(gpg::hadamard(u, Vector<double>::Zero(4)).isZero(0));
}

TEST(Hadamard, NormSubmultiplicative) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto u = oracle::gaussian(rng, 7), v = oracle::gaussian(rng, 7);
    EXPECT_LE(gpg::hadamard(u, v).norm(), u.norm() * v.norm() * (1 + 1e-15));
  }
}

TEST(Hadamard, LengthMismatchThrows) {
  EXPECT_THROW(gpg::hadamard(Vector<double>::Ones(2), Vector<double>::Ones(3)), gpg::DimensionError);
}

TEST(ProblemInstance, RejectsBadInput) {
  EXPECT_THROW(ProblemInstance<double>(Matrix<double>(0, 3), Vector<double>(0)), gpg::DimensionError);
  EXPECT_THROW(ProblemInstance<double>(Matrix<double>::Ones(2, 3), Vector<double>::Ones(3)),
               gpg::DimensionError);
  Matrix<double> a = Matrix<double>::Ones(2, 2);
  a(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ProblemInstance<double>(a, Vector<double>::Ones(2)), gpg::InputError);
  Vector<double> b = Vector<double>::Ones(2);
  b(0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ProblemInstance<double>(Matrix<double>::Ones(2, 2), b), gpg::InputError);
}

TEST(ProblemInstance, CachesGram) {
  std::mt19937_64 rng(3);
  const Matrix<double> a = oracle::gaussian(rng, 6, 4);
  const Vector<double> b = oracle::gaussian(rng, 6);
  const ProblemInstance<double> inst(a, b);
  const Matrix<double> ata = a.transpose() * a;
  const Vector<double> atb = a.transpose() * b;
  EXPECT_TRUE(inst.ata().isApprox(ata, 1e-14));
  EXPECT_TRUE(inst.atb().isApprox(atb, 1e-14));
  EXPECT_EQ(inst.rows(), 6);
  EXPECT_EQ(inst.cols(), 4);
}

TEST(ObjectiveF, ExactFitIsZero) {
  const auto inst = identity2(1, 0);
  EXPECT_EQ(gpg::objective_f(inst, Vector<double>::Unit(2, 0)), 0.0);
}

TEST(ObjectiveF, QuarterAtDiagonal) {
  const auto inst = identity2(0, 0);
  Vector<double> y(2);
  y << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  EXPECT_NEAR(gpg::objective_f(inst, y), 0.25, 1e-15);
}

TEST(ObjectiveF, MatchesNaiveExpansion) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix<double> a = oracle::gaussian(rng, 5, 8);
    const Vector<double> b = oracle::gaussian(rng, 5);
    const ProblemInstance<double> inst(a, b);
    const Vector<double> y = oracle::unit(rng, 8);
    const double ref = oracle::naive_f(a, y, b);
    EXPECT_NEAR(gpg::objective_f(inst, y), ref, 1e-14 * std::max(1.0, ref));
  }
}

TEST(ObjectiveF, FrozenReferenceValue) {
  const FixedInstance f;
  const ProblemInstance<double> inst(f.a, f.b);
  EXPECT_NEAR(gpg::objective_f(inst, f.y), 0.24601163729435838, 1e-14);
}

TEST(ObjectiveF, NonnegativeAndZeroOnlyForExactData) {
  std::mt19937_64 rng(9);
  const Matrix<double> a = oracle::gaussian(rng, 4, 6);
  const Vector<double> y = oracle::unit(rng, 6);
  const Vector<double> exact = a * y.cwiseProduct(y);
  EXPECT_LT(gpg::objective_f(ProblemInstance<double>(a, exact), y), 1e-28);
  for (int t = 0; t < 50; ++t) {
    const ProblemInstance<double> inst(a, oracle::gaussian(rng, 4));
    EXPECT_GT(gpg::objective_f(inst, oracle::unit(rng, 6)), 0.0);
  }
}

TEST(ObjectiveF, DimensionMismatchThrows) {
  const auto inst = identity2(1, 0);
  EXPECT_THROW(gpg::objective_f(inst, Vector<double>::Ones(3)), gpg::DimensionError);
  EXPECT_THROW(gpg::gradient_f(inst, Vector<double>::Ones(1)), gpg::DimensionError);
}

TEST(GradientF, ZeroAtOrigin) {
  std::mt19937_64 rng(1);
  const ProblemInstance<double> inst(oracle::gaussian(rng, 3, 5), oracle::gaussian(rng, 3));
  EXPECT_TRUE(gpg::gradient_f(inst, Vector<double>::Zero(5)).isZero(0));
}

TEST(GradientF, IdentityExample) {
  const auto inst = identity2(0, 0);
  const Vector<double> g = gpg::gradient_f(inst, Vector<double>::Unit(2, 0));
  EXPECT_EQ(g, (Vector<double>(2) << 2, 0).finished());
}

TEST(GradientF, FrozenReferenceValue) {
  const FixedInstance f;
  const ProblemInstance<double> inst(f.a, f.b);
  Vector<double> ref(8);
  ref << 0.10643793, 0.06679258, -0.21104923, -0.43766619, -0.23943141, 0.34602246, 0.77143636,
      0.49134264;
  EXPECT_LT((gpg::gradient_f(inst, f.y) - ref).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GradientF, MatchesCentralDifferences) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const Matrix<double> a = oracle::gaussian(rng, 6, 10);
    const Vector<double> b = oracle::gaussian(rng, 6);
    const ProblemInstance<double> inst(a, b);
    for (int k = 0; k < 100; ++k) {
      const Vector<double> y = oracle::unit(rng, 10);
      const Vector<double> fd =
          oracle::central_difference([&](const oracle::Vec& p) { return oracle::naive_f(a, p, b); }, y);
      const Vector<double> g = gpg::gradient_f(inst, y);
      EXPECT_LE((g - fd).norm(), 1e-6 * std::max(1.0, fd.norm()));
    }
  }
}

TEST(ObjectiveCompositeF, Examples) {
  const ProblemInstance<double> inst(Matrix<double>::Identity(3, 3), Vector<double>::Zero(3));
  EXPECT_DOUBLE_EQ(gpg::objective_F(inst, 1.0, Vector<double>::Unit(3, 0)), 1.5);
  EXPECT_EQ(gpg::objective_F(inst, 1.0, Vector<double>(2.0 * Vector<double>::Unit(3, 1))),
            std::numeric_limits<double>::infinity());
  std::mt19937_64 rng(4);
  const Vector<double> y = oracle::unit(rng, 3);
  EXPECT_EQ(gpg::objective_F(inst, 0.0, y), gpg::objective_f(inst, y));
  EXPECT_THROW(gpg::objective_F(inst, -1.0, y), gpg::InputError);
}

TEST(ObjectiveCompositeF, FeasibilityToleranceIsOneEMinusNine) {
  const ProblemInstance<double> inst(Matrix<double>::Identity(2, 2), Vector<double>::Zero(2));
  const Vector<double> inside = Vector<double>::Unit(2, 0) * std::sqrt(1 + 0.5e-9);
  const Vector<double> outside = Vector<double>::Unit(2, 0) * std::sqrt(1 + 2e-9);
  EXPECT_TRUE(std::isfinite(gpg::objective_F(inst, 0.1, inside)));
  EXPECT_TRUE(std::isinf(gpg::objective_F(inst, 0.1, outside)));
}

TEST(SpectralNorm, Diagonal) {
  Matrix<double> d = Matrix<double>::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  const auto e = gpg::spectral_norm_sym(d);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, 3.0, 1e-9);
}

TEST(SpectralNorm, Identity) {
  for (int n : {1, 4, 9}) EXPECT_NEAR(gpg::spectral_norm_sym(Matrix<double>::Identity(n, n)).value, 1.0, 1e-12);
}

TEST(SpectralNorm, OnesInNullSpaceFallsBackToE1) {
  // 1^T M 1 = 0 for M = v v^T with v = (1, -1).
  Matrix<double> m(2, 2);
  m << 1, -1, -1, 1;
  const auto e = gpg::spectral_norm_sym(m);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(e.value, 2.0, 1e-10);
}

TEST(SpectralNorm, ZeroMatrix) {
  const auto e = gpg::spectral_norm_sym(Matrix<double>::Zero(4, 4));
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(e.converged);
}

TEST(SpectralNorm, ReportsNonConvergence) {
  Matrix<double> m = Matrix<double>::Zero(2, 2);
  m.diagonal() << 1.0, 0.5;
  Matrix<double> r(2, 2);
  r << std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3);
  const Matrix<double> rot = r * m * r.transpose();
  const auto e = gpg::spectral_norm_sym(rot, 1e-12, 3);
  EXPECT_FALSE(e.converged);
  EXPECT_EQ(e.iterations, 3);
  EXPECT_GT(e.value, 0.9);
  EXPECT_LE(e.value, 1.0 + 1e-15);
}

TEST(SpectralNorm, FrozenGramEigenvalue) {
  Matrix<double> b(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) b(i, j) = std::sin(1.0 + i + 2.0 * j);
  const Matrix<double> g = b.transpose() * b;
  EXPECT_NEAR(oracle::largest_eigenvalue(g), 18.03307304343944, 1e-9);
  EXPECT_NEAR(gpg::spectral_norm_sym(g).value, 18.03307304343944, 1e-8);
}

TEST(SpectralNorm, MatchesInertiaBisectionOracle) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const Matrix<double> b = oracle::gaussian(rng, 8, 8);
    const Matrix<double> g = b.transpose() * b;
    const double ref = oracle::largest_eigenvalue(g);
    EXPECT_NEAR(gpg::spectral_norm_sym(g).value, ref, 1e-8 * std::max(1.0, ref));
  }
}

TEST(SpectralNorm, RayleighLowerBound) {
  std::mt19937_64 rng(12);
  const Matrix<double> b = oracle::gaussian(rng, 12, 9);
  const Matrix<double> g = b.transpose() * b;
  const double s = gpg::spectral_norm_sym(g).value;
  for (int t = 0; t < 200; ++t) {
    const Vector<double> v = oracle::gaussian(rng, 9);
    EXPECT_GE(s * (1 + 1e-10), v.dot(g * v) / v.squaredNorm());
  }
}

TEST(SpectralNorm, RejectsNonSquare) {
  EXPECT_THROW(gpg::spectral_norm_sym(Matrix<double>::Ones(2, 3)), gpg::DimensionError);
}

TEST(Lipschitz, IdentityIsSix) {
  const ProblemInstance<double> inst(Matrix<double>::Identity(3, 3), Vector<double>::Zero(3));
  EXPECT_NEAR(gpg::lipschitz_bound(inst).value, 6.0, 1e-12);
}

TEST(Lipschitz, ScalarCase) {
  const ProblemInstance<double> inst(Matrix<double>::Constant(1, 1, 2.0), Vector<double>::Ones(1));
  EXPECT_NEAR(gpg::lipschitz_bound(inst).value, 28.0, 1e-12);
}

TEST(Lipschitz, FrozenReferenceValue) {
  const FixedInstance f;
  const ProblemInstance<double> inst(f.a, f.b);
  EXPECT_NEAR(gpg::lipschitz_bound(inst).value, 75.58542931278339, 1e-8);
}

TEST(Lipschitz, DominatesTwiceNormAtb) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const ProblemInstance<double> inst(oracle::gaussian(rng, 5, 7), oracle::gaussian(rng, 5));
    EXPECT_GE(gpg::lipschitz_bound(inst).value, 2 * inst.atb().norm());
  }
}

TEST(Lipschitz, GradientIsLipschitzOnUnitBall) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 5; ++t) {
    const ProblemInstance<double> inst(oracle::gaussian(rng, 10, 20), oracle::gaussian(rng, 10));
    const double l = gpg::lipschitz_bound(inst).value;
    for (int k = 0; k < 1000; ++k) {
      const Vector<double> y1 = oracle::in_ball(rng, 20), y2 = oracle::in_ball(rng, 20);
      const double lhs = (gpg::gradient_f(inst, y1) - gpg::gradient_f(inst, y2)).norm();
      EXPECT_LE(lhs, l * (y1 - y2).norm() * (1 + 1e-12));
    }
  }
}

TEST(Lipschitz, DescentLemma) {
  std::mt19937_64 rng(32);
  const ProblemInstance<double> inst(oracle::gaussian(rng, 10, 20), oracle::gaussian(rng, 10));
  const double l = gpg::lipschitz_bound(inst).value;
  for (int k = 0; k < 1000; ++k) {
    const Vector<double> y1 = oracle::in_ball(rng, 20), y2 = oracle::in_ball(rng, 20);
    const double bound = gpg::objective_f(inst, y1) + (y2 - y1).dot(gpg::gradient_f(inst, y1)) +
                         0.5 * l * (y2 - y1).squaredNorm();
    EXPECT_LE(gpg::objective_f(inst, y2), bound + 1e-12 * std::max(1.0, std::abs(bound)));
  }
}

TEST(Core, FloatScalarInstantiates) {
  const ProblemInstance<float> inst(Matrix<float>::Identity(2, 2), Vector<float>::Zero(2));
  EXPECT_NEAR(gpg::objective_F(inst, 1.0f, Vector<float>::Unit(2, 0)), 1.5f, 1e-6f);
  EXPECT_NEAR(gpg::lipschitz_bound(inst).value, 6.0f, 1e-5f);
}
