#ifndef GPG_BASELINES_HPP
#define GPG_BASELINES_HPP

#include "gpg/core.hpp"
#include "gpg/oblique.hpp"
#include "gpg/simplex.hpp"
#include "gpg/solver.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <variant>

namespace gpg {

// Convex baselines on the simplex problem  min 1/2 ||A x - b||^2, x in K:
// projected gradient and a two-block ADMM.

struct FixedStep {
  double step{1};
};

struct Backtracking {
  double beta{0.5};
  double c{1e-4};
};

template <typename Scalar>
struct PgParams {
  std::variant<FixedStep, Backtracking> step_rule{Backtracking{}};
  Scalar tol{Scalar(1e-5)};
  int it_max{3000};

  void validate() const {
    if (const auto* f = std::get_if<FixedStep>(&step_rule)) {
      if (!(f->step > 0)) throw InputError("PgParams: fixed step must be positive");
    } else {
      const auto& b = std::get<Backtracking>(step_rule);
      if (!(b.beta > 0 && b.beta < 1) || !(b.c > 0 && b.c < 1)) {
        throw InputError("PgParams: backtracking beta and c must lie in (0, 1)");
      }
    }
    if (!(tol > Scalar(0))) throw InputError("PgParams: tol must be positive");
    if (it_max < 1) throw InputError("PgParams: it_max must be >= 1");
  }
};

// Fixed step 1 / ||A^T A||_2.
template <typename Scalar>
FixedStep default_fixed_step(const ProblemInstance<Scalar>& inst) {
  return FixedStep{static_cast<double>(Scalar(1) / spectral_norm_sym(inst.ata()).value)};
}

template <typename Scalar>
struct AdmmParams {
  Scalar lambda{0};
  Scalar mu{1};
  Scalar tol{Scalar(1e-5)};
  int it_max{3000};

  void validate() const {
    if (!(lambda >= Scalar(0))) throw InputError("AdmmParams: lambda must be nonnegative");
    if (!(mu > Scalar(0))) throw InputError("AdmmParams: mu must be positive");
    if (!(tol > Scalar(0))) throw InputError("AdmmParams: tol must be positive");
    if (it_max < 1) throw InputError("AdmmParams: it_max must be >= 1");
  }
};

namespace detail {

inline constexpr int kMaxBacktracks = 100;

// Projected gradient over a product of simplices. `project` maps a trial point onto the
// feasible set, `value`/`gradient` evaluate 1/2 ||A x - b||^2.
template <typename Scalar, typename Point, typename Value, typename Gradient, typename Project>
BasicSolveResult<Scalar, Point> run_projected_gradient(const PgParams<Scalar>& params, Point x,
                                                       Value value, Gradient gradient,
                                                       Project project) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  BasicSolveResult<Scalar, Point> res;
  res.termination = Termination::MaxIter;

  const auto* fixed = std::get_if<FixedStep>(&params.step_rule);
  const Backtracking bt = fixed ? Backtracking{} : std::get<Backtracking>(params.step_rule);
  Scalar step = fixed ? Scalar(fixed->step) : Scalar(1);

  Scalar phi = value(x);
  res.f_history.push_back(phi);
  for (int k = 0; k < params.it_max; ++k) {
    const Point g = gradient(x);
    Point trial;
    Scalar phi_trial = phi;
    if (fixed) {
      trial = project(Point(x - step * g));
      phi_trial = value(trial);
    } else {
      step /= Scalar(bt.beta);  // let the step grow back by one factor
      int tries = 0;
      for (;; ++tries) {
        trial = project(Point(x - step * g));
        phi_trial = value(trial);
        const Scalar predicted = (g.array() * (trial - x).array()).sum();
        if (phi_trial <= phi + Scalar(bt.c) * predicted) break;
        if (tries >= kMaxBacktracks) {
          trial = x;
          phi_trial = phi;
          break;
        }
        step *= Scalar(bt.beta);
      }
    }

    const Scalar change = (trial - x).norm();
    const Scalar base = x.norm();
    IterationRecord<Scalar> rec;
    rec.objective = phi_trial;
    rec.alpha = step;
    rec.step_norm = change;
    res.history.push_back(rec);
    x = std::move(trial);
    phi = phi_trial;
    res.f_history.push_back(phi);
    res.iterations = k + 1;
    if (change <= params.tol * base) {
      res.termination = Termination::Converged;
      break;
    }
  }
  res.x = x;
  res.y = x.cwiseMax(Scalar(0)).cwiseSqrt();
  res.wall_time = Clock::now() - start;
  return res;
}

}  // namespace detail

// Projected gradient x+ = P_K(x - t grad phi(x)), Armijo backtracking by default.
template <typename Scalar>
SolveResult<Scalar> pg_solve(const ProblemInstance<Scalar>& inst, const PgParams<Scalar>& params,
                             const VectorRef<Scalar>& x0) {
  params.validate();
  require_same_size(x0.size(), inst.cols(), "pg_solve: x0");
  require_finite(x0, "pg_solve: x0");
  auto value = [&](const Vector<Scalar>& x) {
    Vector<Scalar> r = -inst.b();
    r.noalias() += inst.a() * x;
    return Scalar(0.5) * r.squaredNorm();
  };
  auto gradient = [&](const Vector<Scalar>& x) {
    Vector<Scalar> g = -inst.atb();
    g.noalias() += inst.ata() * x;
    return g;
  };
  auto project = [](const Vector<Scalar>& v) { return project_simplex(v); };
  return detail::run_projected_gradient<Scalar>(params, project_simplex(x0), value, gradient,
                                                project);
}

// Projected gradient for the stochastic-matrix problem, projecting every column (or row)
// onto the simplex.
template <typename Scalar>
MatrixSolveResult<Scalar> pg_solve_matrix(const MatrixInstance<Scalar>& inst,
                                          const PgParams<Scalar>& params,
                                          const Matrix<Scalar>& x0) {
  params.validate();
  require_same_size(x0.rows(), inst.unknown_rows(), "pg_solve_matrix: rows(X0)");
  require_same_size(x0.cols(), inst.unknown_cols(), "pg_solve_matrix: cols(X0)");
  require_finite(x0, "pg_solve_matrix: x0");
  const bool rows = inst.row_blocks();
  auto value = [&](const Matrix<Scalar>& x) {
    Matrix<Scalar> r = -inst.b();
    r.noalias() += inst.a() * x;
    return Scalar(0.5) * r.squaredNorm();
  };
  auto gradient = [&](const Matrix<Scalar>& x) {
    Matrix<Scalar> g = -inst.atb();
    g.noalias() += inst.ata() * x;
    return g;
  };
  auto project = [rows](const Matrix<Scalar>& v) {
    Matrix<Scalar> out(v.rows(), v.cols());
    if (rows) {
      for (Eigen::Index i = 0; i < v.rows(); ++i) out.row(i) = project_simplex(v.row(i)).transpose();
    } else {
      for (Eigen::Index j = 0; j < v.cols(); ++j) out.col(j) = project_simplex(v.col(j));
    }
    return out;
  };
  return detail::run_projected_gradient<Scalar>(params, project(x0), value, gradient, project);
}

// Two-block ADMM on  phi(x) + lambda ||u||_1 + chi_K(u)  s.t.  x = u. The x-update solves
// (A^T A + mu I) x = A^T b + mu (u - w) with a factorization computed once; the u-update
// is the simplex projection (||u||_1 is constant on K). Returns the feasible block u.
template <typename Scalar>
SolveResult<Scalar> admm_solve(const ProblemInstance<Scalar>& inst, const AdmmParams<Scalar>& params,
                               const VectorRef<Scalar>& x0) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  params.validate();
  require_same_size(x0.size(), inst.cols(), "admm_solve: x0");
  require_finite(x0, "admm_solve: x0");

  const Eigen::Index n = inst.cols();
  Matrix<Scalar> system = inst.ata();
  system.diagonal().array() += params.mu;
  const Eigen::LLT<Matrix<Scalar>> llt(system);
  if (llt.info() != Eigen::Success) throw InputError("admm_solve: factorization failed");

  auto phi = [&](const Vector<Scalar>& x) {
    Vector<Scalar> r = -inst.b();
    r.noalias() += inst.a() * x;
    return Scalar(0.5) * r.squaredNorm();
  };

  SolveResult<Scalar> res;
  res.termination = Termination::MaxIter;
  Vector<Scalar> x = x0;
  Vector<Scalar> u = project_simplex(x0);
  Vector<Scalar> w = Vector<Scalar>::Zero(n);
  res.f_history.push_back(phi(u) + params.lambda * u.template lpNorm<1>());
  for (int k = 0; k < params.it_max; ++k) {
    x = llt.solve(inst.atb() + params.mu * (u - w));
    const Vector<Scalar> u_prev = u;
    u = project_simplex(x + w);
    w += x - u;

    const Scalar primal = (x - u).norm();
    const Scalar dual = params.mu * (u - u_prev).norm();
    IterationRecord<Scalar> rec;
    rec.objective = phi(u) + params.lambda * u.template lpNorm<1>();
    rec.lambda = params.lambda;
    rec.alpha = params.mu;
    rec.step_norm = (u - u_prev).norm();
    rec.residual = primal;
    res.history.push_back(rec);
    res.f_history.push_back(rec.objective);
    res.iterations = k + 1;
    if (primal <= params.tol && dual <= params.tol) {
      res.termination = Termination::Converged;
      break;
    }
  }
  res.x = u;
  res.y = u.cwiseSqrt();
  res.lambda_final = params.lambda;
  res.wall_time = Clock::now() - start;
  return res;
}

}  // namespace gpg

#endif  // GPG_BASELINES_HPP
