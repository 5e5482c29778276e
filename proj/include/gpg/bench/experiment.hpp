#ifndef GPG_BENCH_EXPERIMENT_HPP
#define GPG_BENCH_EXPERIMENT_HPP

#include "gpg/bench/config.hpp"
#include "gpg/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gpg::bench {

struct SolverOutcome {
  int run{0};
  std::uint64_t seed{0};
  std::string solver;
  SolverMethod method{SolverMethod::Gpg};
  std::string error;  // non-empty when the solver threw

  Eigen::Index nnz{0};
  double kkt{0};
  double obj{0};  // 1/2 ||A x - b||^2 (Frobenius for the matrix problem)
  double ct_seconds{0};
  int iterations{0};
  double lambda_final{0};
  std::string termination;
  std::optional<double> rsnr;
  std::optional<double> rres;

  Matrix<double> solution;  // x as a column, or X
  std::vector<double> f_history;
  std::vector<IterationRecord<double>> history;
  std::vector<Matrix<double>> iterates;  // y^k, only with keep_iterates
  double lambda0{0};
  double alpha0{0};
  double gamma1{0};
  double gamma2{0};
  double lipschitz{0};
  std::string diagnostics;
};

struct RunInfo {
  int run{0};
  std::uint64_t seed{0};
  std::optional<double> realized_snr_db;
  std::optional<Eigen::Index> n_bn;
  std::optional<double> column_sum_deviation;
  Eigen::Index rows{0};
  Eigen::Index cols{0};
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RunInfo> runs;
  std::vector<SolverOutcome> rows;  // run-major, solvers in config order
};

struct RunOptions {
  // Keep every GPG iterate y^k in SolverOutcome::iterates.
  bool keep_iterates{false};
};

// Runs every configured solver on every seeded instance. Solver exceptions are caught and
// recorded with termination "error".
ExperimentReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

inline constexpr const char* kResultsHeader =
    "solver,nnz,kkt,obj,ct_seconds,iterations,lambda_final,termination";

void write_results_csv(std::ostream& out, const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
// iter,F,lambda,alpha,step_norm; row 0 is the starting point.
void write_trace_csv(std::ostream& out, const SolverOutcome& row);

// results.csv, report.json and, with cfg.trace, trace_<run>_<solver>.csv under `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace gpg::bench

#endif  // GPG_BENCH_EXPERIMENT_HPP
