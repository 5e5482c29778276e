#ifndef GPG_SOLVER_HPP
#define GPG_SOLVER_HPP

#include "gpg/core.hpp"
#include "gpg/prox.hpp"
#include "gpg/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace gpg {

enum class Termination { Converged, MaxIter, Degenerate };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged:
      return "converged";
    case Termination::MaxIter:
      return "max_iter";
    case Termination::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

// Tunables of the geometric proximal gradient loop. Defaults are the settings used for
// the benchmark problems; alpha0, lambda0, tol and it_max are per-experiment choices.
template <typename Scalar>
struct GpgParams {
  Scalar alpha0{1};
  Scalar lambda0{Scalar(1e-2)};
  Scalar rho1{Scalar(0.9)};
  Scalar rho2{Scalar(0.6)};
  Scalar rho3{Scalar(0.9)};
  // Step-size floor; 0.9 / (L + gamma2) when unset.
  std::optional<Scalar> gamma1;
  Scalar gamma2{Scalar(1e-5)};
  Scalar delta1{4};
  Scalar delta2{Scalar(1e-4)};
  Scalar tol{Scalar(1e-5)};
  int it_max{3000};
  int inner_max{10000};
  bool fixed_lambda{false};
  // Keep every accepted iterate in SolveResult::trace.
  bool trace{false};

  void validate() const {
    auto in_unit = [](Scalar r) { return r > Scalar(0) && r < Scalar(1); };
    if (!(alpha0 > Scalar(0))) throw InputError("GpgParams: alpha0 must be positive");
    if (!(lambda0 >= Scalar(0))) throw InputError("GpgParams: lambda0 must be nonnegative");
    if (!in_unit(rho1) || !in_unit(rho2) || !in_unit(rho3)) {
      throw InputError("GpgParams: rho1, rho2, rho3 must lie in (0, 1)");
    }
    if (gamma1 && !(*gamma1 > Scalar(0) && *gamma1 <= alpha0)) {
      throw InputError("GpgParams: gamma1 must lie in (0, alpha0]");
    }
    if (!(gamma2 > Scalar(0))) throw InputError("GpgParams: gamma2 must be positive");
    if (!(delta1 > Scalar(0)) || !(delta2 > Scalar(0))) {
      throw InputError("GpgParams: delta1 and delta2 must be positive");
    }
    if (!(tol > Scalar(0))) throw InputError("GpgParams: tol must be positive");
    if (it_max < 1 || inner_max < 1) throw InputError("GpgParams: it_max and inner_max must be >= 1");
  }
};

template <typename Scalar>
struct IterationRecord {
  Scalar objective{0};   // F(lambda_{k+1}, y^{k+1})
  Scalar lambda{0};      // lambda_{k+1}
  Scalar alpha{0};       // alpha_{k+1}
  Scalar step_norm{0};   // ||y^{k+1} - y^k||
  Scalar residual{0};    // ||grad f(y^{k+1}) - grad f(y^k) - (y^{k+1} - y^k) / alpha_{k+1}||
  int inner{0};          // backtracking passes
};

template <typename Scalar, typename Point>
struct BasicSolveResult {
  Point x;  // y . y
  Point y;
  int iterations{0};
  // F(lambda_k, y^k) for k = 0..iterations.
  std::vector<Scalar> f_history;
  std::vector<IterationRecord<Scalar>> history;
  std::vector<Point> trace;
  Scalar lambda_final{0};
  Termination termination{Termination::MaxIter};
  std::chrono::duration<double> wall_time{};
  Scalar lipschitz{0};
  Scalar gamma1{0};
  std::string diagnostics;
};

template <typename Scalar>
using SolveResult = BasicSolveResult<Scalar, Vector<Scalar>>;

namespace detail {

// Unit-norm blocks are the columns of Y, or its rows when the model says so.
template <typename Scalar>
bool blocks_feasible(const Matrix<Scalar>& y, bool row_blocks, Scalar tol) {
  if (row_blocks) {
    return ((y.rowwise().squaredNorm().array() - Scalar(1)).abs() <= tol).all();
  }
  return ((y.colwise().squaredNorm().array() - Scalar(1)).abs() <= tol).all();
}

template <typename Scalar>
void normalize_blocks(Matrix<Scalar>& y, bool row_blocks) {
  if (row_blocks) {
    for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i).normalize();
  } else {
    for (Eigen::Index j = 0; j < y.cols(); ++j) y.col(j).normalize();
  }
}

// Independent sphere prox on every block; rows are handled through the transpose so a
// single column routine serves both orientations. Returns true if some block hit the
// degenerate z == 0, lambda == 0 case.
template <typename Scalar>
bool prox_blocks(const Matrix<Scalar>& y, const Matrix<Scalar>& grad, Scalar alpha, Scalar lambda,
                 bool row_blocks, Matrix<Scalar>& out) {
  bool degenerate = false;
  auto run = [&](const Matrix<Scalar>& d, const Matrix<Scalar>& g, Matrix<Scalar>& res) {
    res.resize(d.rows(), d.cols());
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      Eigen::Index spike = 0;
      prox_sphere_l1_into<Scalar>(d.col(j), g.col(j), alpha, lambda, res.col(j), &spike);
      res.col(j).normalize();
      if (lambda == Scalar(0) && (d.col(j) - alpha * g.col(j)).isZero(0)) degenerate = true;
    }
  };
  if (row_blocks) {
    const Matrix<Scalar> dt = y.transpose();
    const Matrix<Scalar> gt = grad.transpose();
    Matrix<Scalar> rt;
    run(dt, gt, rt);
    out = rt.transpose();
  } else {
    run(y, grad, out);
  }
  return degenerate;
}

template <typename Scalar>
Scalar composite_objective(Scalar smooth, Scalar lambda, const Matrix<Scalar>& y, bool row_blocks) {
  if (!blocks_feasible<Scalar>(y, row_blocks, Scalar(kFeasibilityTol))) {
    return std::numeric_limits<Scalar>::infinity();
  }
  return smooth + lambda * y.cwiseAbs().sum();
}

// Smooth part of the vector problem viewed as an n x 1 matrix.
template <typename Scalar>
struct VectorModel {
  const ProblemInstance<Scalar>& inst;

  bool row_blocks() const { return false; }
  Scalar value(const Matrix<Scalar>& y) const {
    return half_residual_sq<Scalar>(inst.a(), y.col(0), inst.b());
  }
  Matrix<Scalar> gradient(const Matrix<Scalar>& y) const {
    return squared_gradient<Scalar>(inst.ata(), inst.atb(), y.col(0));
  }
  Scalar lipschitz() const { return lipschitz_bound(inst).value; }
};

// The geometric proximal gradient loop with backtracking on alpha and adaptive lambda.
// `y0` must already be feasible; it is renormalized before the first step.
template <typename Scalar, typename Model>
BasicSolveResult<Scalar, Matrix<Scalar>> run_gpg(const Model& model, const GpgParams<Scalar>& params,
                                                 const Matrix<Scalar>& y0) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  params.validate();
  require_finite(y0, "gpg: initial point");
  const bool rows = model.row_blocks();
  if (!blocks_feasible<Scalar>(y0, rows, Scalar(kFeasibilityTol))) {
    throw InputError("gpg: initial point is not on the sphere (product)");
  }

  BasicSolveResult<Scalar, Matrix<Scalar>> res;
  res.lipschitz = model.lipschitz();
  res.gamma1 = params.gamma1.value_or(Scalar(0.9) / (res.lipschitz + params.gamma2));
  if (res.gamma1 > params.alpha0) {
    throw InputError("gpg: step floor gamma1 exceeds alpha0");
  }

  Matrix<Scalar> y = y0;
  normalize_blocks(y, rows);
  Scalar lambda = params.lambda0;
  Scalar f_cur = composite_objective(model.value(y), lambda, y, rows);
  res.f_history.push_back(f_cur);
  if (params.trace) res.trace.push_back(y);
  Matrix<Scalar> grad = model.gradient(y);
  Matrix<Scalar> y_bar;

  res.termination = Termination::MaxIter;
  for (int k = 0; k < params.it_max; ++k) {
    if (f_cur == Scalar(0)) {
      // Exact fit with lambda == 0: the relative tests are undefined.
      res.termination = Termination::Converged;
      break;
    }

    Scalar alpha = params.alpha0;
    bool degenerate = prox_blocks<Scalar>(y, grad, alpha, lambda, rows, y_bar);
    Scalar f_bar = composite_objective(model.value(y_bar), lambda, y_bar, rows);
    Scalar step_sq = (y_bar - y).squaredNorm();

    int inner = 0;
    bool stalled = false;
    while (!(f_bar <= f_cur - Scalar(0.5) * params.gamma2 * step_sq)) {
      if (++inner > params.inner_max) {
        stalled = true;
        break;
      }
      alpha = std::max(res.gamma1, alpha * params.rho1);
      if (f_bar > params.delta1 * f_cur) alpha = std::max(res.gamma1, alpha * params.rho2);
      if (!params.fixed_lambda && std::abs(f_bar - f_cur) < params.delta2 * f_cur) {
        lambda *= params.rho3;
        f_cur = composite_objective(model.value(y), lambda, y, rows);
      }
      degenerate = prox_blocks<Scalar>(y, grad, alpha, lambda, rows, y_bar);
      f_bar = composite_objective(model.value(y_bar), lambda, y_bar, rows);
      step_sq = (y_bar - y).squaredNorm();
    }

    if (stalled) {
      res.termination = Termination::Degenerate;
      res.diagnostics = "sufficient decrease not reached after " +
                        std::to_string(params.inner_max) + " backtracking passes at iteration " +
                        std::to_string(k) + " (alpha=" + std::to_string(alpha) +
                        ", F=" + std::to_string(f_cur) + ")";
      break;
    }
    if (degenerate) {
      res.termination = Termination::Degenerate;
      res.diagnostics = "prox input z == 0 with lambda == 0 at iteration " + std::to_string(k);
      break;
    }

    const Matrix<Scalar> x_prev = y.cwiseProduct(y);
    Matrix<Scalar> next_grad = model.gradient(y_bar);
    IterationRecord<Scalar> rec;
    rec.objective = f_bar;
    rec.lambda = lambda;
    rec.alpha = alpha;
    rec.step_norm = std::sqrt(step_sq);
    rec.residual = (next_grad - grad - (y_bar - y) / alpha).norm();
    rec.inner = inner;

    y.swap(y_bar);
    grad.swap(next_grad);
    f_cur = f_bar;
    res.iterations = k + 1;
    res.history.push_back(rec);
    res.f_history.push_back(f_cur);
    if (params.trace) res.trace.push_back(y);

    const Matrix<Scalar> x = y.cwiseProduct(y);
    if ((x - x_prev).norm() <= params.tol * x_prev.norm()) {
      res.termination = Termination::Converged;
      break;
    }
  }

  res.y = y;
  res.x = y.cwiseProduct(y);
  res.lambda_final = lambda;
  res.wall_time = Clock::now() - start;
  return res;
}

}  // namespace detail

// Geometric proximal gradient for min 1/2 ||A (y.y) - b||^2 + lambda ||y||_1 over the unit
// sphere. Returns x = y.y on the probability simplex.
template <typename Scalar>
SolveResult<Scalar> gpg_solve(const ProblemInstance<Scalar>& inst, const GpgParams<Scalar>& params,
                              const VectorRef<Scalar>& y0) {
  require_same_size(y0.size(), inst.cols(), "gpg_solve: y0");
  const Matrix<Scalar> start = y0;
  auto raw = detail::run_gpg<Scalar>(detail::VectorModel<Scalar>{inst}, params, start);

  SolveResult<Scalar> out;
  out.x = raw.x.col(0);
  out.y = raw.y.col(0);
  out.iterations = raw.iterations;
  out.f_history = std::move(raw.f_history);
  out.history = std::move(raw.history);
  out.trace.reserve(raw.trace.size());
  for (const auto& t : raw.trace) out.trace.emplace_back(t.col(0));
  out.lambda_final = raw.lambda_final;
  out.termination = raw.termination;
  out.wall_time = raw.wall_time;
  out.lipschitz = raw.lipschitz;
  out.gamma1 = raw.gamma1;
  out.diagnostics = std::move(raw.diagnostics);
  return out;
}

// y^0 = 1_n / sqrt(n).
template <typename Scalar>
Vector<Scalar> uniform_sphere_point(Eigen::Index n) {
  return Vector<Scalar>::Constant(n, Scalar(1) / std::sqrt(Scalar(n)));
}

// Number of entries with magnitude above eps.
template <typename Derived>
Eigen::Index nnz(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar eps = 1e-6) {
  if (!(eps >= 0)) throw InputError("nnz: eps must be nonnegative");
  return (x.array().abs() > eps).count();
}

// Natural-map residual ||x - P_K(x - A^T (A x - b))|| of the simplex constrained problem.
template <typename Scalar>
Scalar kkt_residual(const ProblemInstance<Scalar>& inst, const VectorRef<Scalar>& x) {
  require_same_size(x.size(), inst.cols(), "kkt_residual");
  if (std::abs(x.sum() - Scalar(1)) > Scalar(1e-6) || x.minCoeff() < Scalar(-1e-6)) {
    throw InputError("kkt_residual: x is not in the simplex");
  }
  Vector<Scalar> grad = -inst.atb();
  grad.noalias() += inst.ata() * x;
  return (x - project_simplex(x - grad)).norm();
}

}  // namespace gpg

#endif  // GPG_SOLVER_HPP
