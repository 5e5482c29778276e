#include "gpg/bench/experiment.hpp"

#include "gpg/baselines.hpp"
#include "gpg/bench/generators.hpp"
#include "gpg/bench/metrics.hpp"
#include "gpg/bench/pbn.hpp"
#include "gpg/oblique.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace gpg::bench {

namespace {

using json = nlohmann::json;

struct VectorProblem {
  ProblemInstance<double> inst;
  std::optional<Vector<double>> x_star;
};

template <typename Result>
void fill_common(SolverOutcome& row, const Result& res, bool timing) {
  row.iterations = res.iterations;
  row.lambda_final = res.lambda_final;
  row.termination = to_string(res.termination);
  row.ct_seconds = timing ? res.wall_time.count() : 0.0;
  row.f_history = res.f_history;
  row.history = res.history;
  row.gamma1 = res.gamma1;
  row.lipschitz = res.lipschitz;
  row.diagnostics = res.diagnostics;
}

SolverOutcome solve_vector(const ExperimentConfig& cfg, const RunOptions& opts,
                           const SolverSpec& spec, const VectorProblem& p) {
  SolverOutcome row;
  row.solver = spec.name;
  row.method = spec.method;
  const auto n = p.inst.cols();
  Vector<double> x;
  switch (spec.method) {
    case SolverMethod::Gpg: {
      auto params = spec.gpg;
      params.trace = opts.keep_iterates;
      const auto res = gpg_solve(p.inst, params, uniform_sphere_point<double>(n));
      fill_common(row, res, cfg.timing);
      row.lambda0 = params.lambda0;
      row.alpha0 = params.alpha0;
      row.gamma2 = params.gamma2;
      for (const auto& y : res.trace) row.iterates.emplace_back(y);
      x = res.x;
      break;
    }
    case SolverMethod::Pg: {
      auto params = spec.pg;
      if (spec.pg_auto_step) params.step_rule = default_fixed_step(p.inst);
      const auto res = pg_solve(p.inst, params, Vector<double>::Constant(n, 1.0 / double(n)));
      fill_common(row, res, cfg.timing);
      x = res.x;
      break;
    }
    case SolverMethod::Admm: {
      const auto res = admm_solve(p.inst, spec.admm, Vector<double>::Constant(n, 1.0 / double(n)));
      fill_common(row, res, cfg.timing);
      row.lambda0 = spec.admm.lambda;
      x = res.x;
      break;
    }
  }
  row.solution = x;
  row.nnz = nnz(x, cfg.nnz_eps);
  row.kkt = kkt_residual(p.inst, x);
  row.obj = simplex_objective(p.inst, x);
  if (p.x_star) row.rsnr = rsnr(*p.x_star, x);
  return row;
}

SolverOutcome solve_matrix(const ExperimentConfig& cfg, const RunOptions& opts,
                           const SolverSpec& spec, const MatrixInstance<double>& inst) {
  SolverOutcome row;
  row.solver = spec.name;
  row.method = spec.method;
  const auto rows = inst.unknown_rows();
  const auto cols = inst.unknown_cols();
  Matrix<double> x;
  switch (spec.method) {
    case SolverMethod::Gpg: {
      auto params = spec.gpg;
      params.trace = opts.keep_iterates;
      const auto res = gpg_solve_matrix(
          inst, params, ObliqueIterate<double>::uniform(rows, cols, inst.orientation()));
      fill_common(row, res, cfg.timing);
      row.lambda0 = params.lambda0;
      row.alpha0 = params.alpha0;
      row.gamma2 = params.gamma2;
      row.iterates = res.trace;
      x = res.x;
      break;
    }
    case SolverMethod::Pg: {
      auto params = spec.pg;
      if (spec.pg_auto_step) {
        params.step_rule = FixedStep{1.0 / spectral_norm_sym(inst.ata()).value};
      }
      const double fill = 1.0 / double(inst.row_blocks() ? cols : rows);
      const Matrix<double> x0 = Matrix<double>::Constant(rows, cols, fill);
      const auto res = pg_solve_matrix(inst, params, x0);
      fill_common(row, res, cfg.timing);
      x = res.x;
      break;
    }
    case SolverMethod::Admm:
      throw ConfigError("admm is not available for the matrix problem");
  }
  row.solution = x;
  row.nnz = nnz(x, cfg.nnz_eps);
  row.kkt = kkt_residual_matrix(inst, x);
  row.obj = matrix_objective(inst, x);
  if (inst.row_blocks() && inst.a().rows() == 1) row.rres = rres(inst.a().row(0).transpose(), x);
  return row;
}

SolverOutcome failed(const SolverSpec& spec, const std::exception& e) {
  SolverOutcome row;
  row.solver = spec.name;
  row.method = spec.method;
  row.error = e.what();
  row.termination = "error";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.kkt = row.obj = row.lambda_final = nan;
  return row;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

json matrix_json(const Matrix<double>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(number(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

json solver_config_json(const SolverSpec& s) {
  json j{{"name", s.name}, {"method", to_string(s.method)}};
  switch (s.method) {
    case SolverMethod::Gpg: {
      const auto& g = s.gpg;
      j["alpha0"] = g.alpha0;
      j["lambda0"] = g.lambda0;
      j["fixed_lambda"] = g.fixed_lambda;
      j["rho1"] = g.rho1;
      j["rho2"] = g.rho2;
      j["rho3"] = g.rho3;
      if (g.gamma1) j["gamma1"] = *g.gamma1;
      j["gamma2"] = g.gamma2;
      j["delta1"] = g.delta1;
      j["delta2"] = g.delta2;
      j["tol"] = g.tol;
      j["it_max"] = g.it_max;
      j["inner_max"] = g.inner_max;
      break;
    }
    case SolverMethod::Pg:
      if (const auto* f = std::get_if<FixedStep>(&s.pg.step_rule)) {
        j["step"] = "fixed";
        j["fixed_step"] = s.pg_auto_step ? json("auto") : json(f->step);
      } else {
        const auto& b = std::get<Backtracking>(s.pg.step_rule);
        j["step"] = "backtracking";
        j["beta"] = b.beta;
        j["c"] = b.c;
      }
      j["tol"] = s.pg.tol;
      j["it_max"] = s.pg.it_max;
      break;
    case SolverMethod::Admm:
      j["lambda"] = s.admm.lambda;
      j["mu"] = s.admm.mu;
      j["tol"] = s.admm.tol;
      j["it_max"] = s.admm.it_max;
      break;
  }
  return j;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  ExperimentReport report;
  report.config = cfg;
  for (int r = 0; r < cfg.runs; ++r) {
    RunInfo info;
    info.run = r;
    info.seed = cfg.seed + static_cast<std::uint64_t>(r);

    std::optional<VectorProblem> vec;
    std::optional<MatrixInstance<double>> mat;
    switch (cfg.experiment) {
      case ExperimentKind::Lasso: {
        auto g = gen_lasso(cfg.j, info.seed);
        info.realized_snr_db = g.snr_db;
        vec.emplace(VectorProblem{std::move(g.instance), std::move(g.x_star)});
        break;
      }
      case ExperimentKind::Hyperspectral: {
        auto g = gen_hyperspectral(cfg.snr_db, info.seed);
        info.realized_snr_db = g.snr_db;
        vec.emplace(VectorProblem{std::move(g.instance), std::move(g.x_star)});
        break;
      }
      case ExperimentKind::Pbn: {
        const auto pbn = build_pbn(cfg.pbn == 1 ? pbn_p1() : pbn_p2());
        info.n_bn = pbn.n_bn;
        info.column_sum_deviation = pbn.column_sum_deviation;
        vec.emplace(VectorProblem{pbn.problem(), std::nullopt});
        break;
      }
      case ExperimentKind::Stationary:
        mat.emplace(stationary_instance());
        break;
    }
    info.rows = vec ? vec->inst.rows() : mat->a().rows();
    info.cols = vec ? vec->inst.cols() : mat->unknown_rows() * mat->unknown_cols();
    report.runs.push_back(info);

    for (const auto& spec : cfg.solvers) {
      SolverOutcome row;
      try {
        row = vec ? solve_vector(cfg, opts, spec, *vec) : solve_matrix(cfg, opts, spec, *mat);
      } catch (const std::exception& e) {
        row = failed(spec, e);
      }
      row.run = r;
      row.seed = info.seed;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_results_csv(std::ostream& out, const ExperimentReport& report) {
  out << kResultsHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.solver << ',' << r.nnz << ',' << fmt(r.kkt) << ',' << fmt(r.obj) << ','
        << fmt(r.ct_seconds) << ',' << r.iterations << ',' << fmt(r.lambda_final) << ','
        << r.termination << '\n';
  }
}

void write_trace_csv(std::ostream& out, const SolverOutcome& row) {
  out << "iter,F,lambda,alpha,step_norm\n";
  if (row.f_history.empty()) return;
  out << 0 << ',' << fmt(row.f_history[0]) << ',' << fmt(row.lambda0) << ',' << fmt(row.alpha0)
      << ',' << fmt(0.0) << '\n';
  for (std::size_t k = 0; k < row.history.size(); ++k) {
    const auto& h = row.history[k];
    out << k + 1 << ',' << fmt(h.objective) << ',' << fmt(h.lambda) << ',' << fmt(h.alpha) << ','
        << fmt(h.step_norm) << '\n';
  }
}

std::string report_json(const ExperimentReport& report) {
  const auto& cfg = report.config;
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["seed"] = cfg.seed;
  j["runs"] = cfg.runs;
  j["tol"] = cfg.tol;
  j["it_max"] = cfg.it_max;
  j["nnz_eps"] = cfg.nnz_eps;
  switch (cfg.experiment) {
    case ExperimentKind::Lasso:
      j["j"] = cfg.j;
      break;
    case ExperimentKind::Hyperspectral:
      j["snr_db"] = number(cfg.snr_db);
      break;
    case ExperimentKind::Pbn:
      j["pbn"] = cfg.pbn == 1 ? "P1" : "P2";
      break;
    case ExperimentKind::Stationary:
      break;
  }
  j["solvers"] = json::array();
  for (const auto& s : cfg.solvers) j["solvers"].push_back(solver_config_json(s));

  j["instances"] = json::array();
  for (const auto& info : report.runs) {
    json ij{{"run", info.run}, {"seed", info.seed}, {"rows", info.rows}, {"cols", info.cols}};
    if (info.realized_snr_db) ij["realized_snr_db"] = number(*info.realized_snr_db);
    if (info.n_bn) ij["n_bn"] = *info.n_bn;
    if (info.column_sum_deviation) ij["column_sum_deviation"] = *info.column_sum_deviation;
    j["instances"].push_back(std::move(ij));
  }

  j["results"] = json::array();
  for (const auto& r : report.rows) {
    json rj{{"run", r.run},
            {"seed", r.seed},
            {"solver", r.solver},
            {"method", to_string(r.method)},
            {"nnz", r.nnz},
            {"kkt", number(r.kkt)},
            {"obj", number(r.obj)},
            {"ct_seconds", number(r.ct_seconds)},
            {"iterations", r.iterations},
            {"lambda_final", number(r.lambda_final)},
            {"termination", r.termination}};
    if (!r.error.empty()) rj["error"] = r.error;
    if (!r.diagnostics.empty()) rj["diagnostics"] = r.diagnostics;
    if (r.rsnr) rj["rsnr"] = number(*r.rsnr);
    if (r.rres) rj["rres"] = number(*r.rres);
    if (r.method == SolverMethod::Gpg && r.error.empty()) {
      rj["lipschitz"] = r.lipschitz;
      rj["gamma1"] = r.gamma1;
    }
    if (r.solution.size() > 0) rj["solution"] = matrix_json(r.solution);
    j["results"].push_back(std::move(rj));
  }

  json summary = json::array();
  for (const auto& s : cfg.solvers) {
    std::vector<double> nnzs, objs, kkts, cts, rsnrs, rress;
    int failures = 0;
    for (const auto& r : report.rows) {
      if (r.solver != s.name) continue;
      if (!r.error.empty()) {
        ++failures;
        continue;
      }
      nnzs.push_back(double(r.nnz));
      objs.push_back(r.obj);
      kkts.push_back(r.kkt);
      cts.push_back(r.ct_seconds);
      if (r.rsnr) rsnrs.push_back(*r.rsnr);
      if (r.rres) rress.push_back(*r.rres);
    }
    json sj{{"solver", s.name},
            {"failures", failures},
            {"median_nnz", number(median(nnzs))},
            {"mean_nnz", number(mean(nnzs))},
            {"mean_obj", number(mean(objs))},
            {"mean_kkt", number(mean(kkts))},
            {"mean_ct_seconds", number(mean(cts))}};
    if (!rsnrs.empty()) sj["mean_rsnr"] = number(mean(rsnrs));
    if (!rress.empty()) sj["mean_rres"] = number(mean(rress));
    summary.push_back(std::move(sj));
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("results.csv");
    write_results_csv(out, report);
  }
  {
    auto out = open("report.json");
    out << report_json(report);
  }
  if (report.config.trace) {
    for (const auto& r : report.rows) {
      if (r.history.empty()) continue;
      auto out = open("trace_" + std::to_string(r.run) + "_" + r.solver + ".csv");
      write_trace_csv(out, r);
    }
  }
}

}  // namespace gpg::bench
