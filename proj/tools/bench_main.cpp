#include "gpg/bench/config.hpp"
#include "gpg/bench/experiment.hpp"
#include "gpg/bench/generators.hpp"
#include "gpg/bench/metrics.hpp"
#include "gpg/bench/pbn.hpp"
#include "gpg/io.hpp"
#include "gpg/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace gpg;
using namespace gpg::bench;

namespace {

void write_matrix(const fs::path& path, const Matrix<double>& m, bool binary) {
  if (binary) {
    io::write_binary(path, m);
  } else {
    io::write_csv(path, m);
  }
}

int cmd_run(const std::string& experiment, const std::string& config_path,
            const std::optional<std::uint64_t>& seed, const std::optional<int>& runs,
            const std::optional<double>& nnz_eps, bool trace, bool no_timing,
            const std::string& out_dir) {
  const auto kind = parse_experiment(experiment);
  KeyValues kv;
  if (!config_path.empty()) kv = parse_key_values_file(config_path);
  if (seed) kv.emplace_back("seed", std::to_string(*seed));
  if (runs) kv.emplace_back("runs", std::to_string(*runs));
  if (nnz_eps) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *nnz_eps);
    kv.emplace_back("nnz_eps", buf);
  }
  if (trace) kv.emplace_back("trace", "true");
  if (no_timing) kv.emplace_back("timing", "false");
  auto cfg = make_config(kind, kv);
  cfg.output_path = out_dir;

  const auto report = run_experiment(cfg);
  write_report(report, cfg.output_path);
  write_results_csv(std::cout, report);
  for (const auto& r : report.rows) {
    if (!r.error.empty()) std::cerr << "run " << r.run << " " << r.solver << ": " << r.error << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& experiment, std::uint64_t seed, int j, double snr_db,
            const std::string& pbn, const std::string& format, const std::string& out_dir) {
  const auto kind = parse_experiment(experiment);
  const bool binary = format == "bin";
  const std::string ext = binary ? ".bin" : ".csv";
  fs::create_directories(out_dir);

  Matrix<double> augmented;
  std::optional<Vector<double>> x_star;
  switch (kind) {
    case ExperimentKind::Lasso:
    case ExperimentKind::Hyperspectral: {
      auto g = kind == ExperimentKind::Lasso ? gen_lasso(j, seed) : gen_hyperspectral(snr_db, seed);
      augmented.resize(g.instance.rows(), g.instance.cols() + 1);
      augmented << g.instance.a(), g.instance.b();
      x_star = g.x_star;
      std::cout << "realized_snr_db=" << g.snr_db << "\n";
      break;
    }
    case ExperimentKind::Pbn: {
      const auto inst = build_pbn(pbn == "P2" ? pbn_p2() : pbn_p1());
      augmented.resize(inst.a.rows(), inst.a.cols() + 1);
      augmented << inst.a, inst.b;
      std::cout << "n_bn=" << inst.n_bn << "\n";
      break;
    }
    case ExperimentKind::Stationary:
      augmented = stationary_d1().transpose();
      break;
  }
  write_matrix(fs::path(out_dir) / ("instance" + ext), augmented, binary);
  if (x_star) write_matrix(fs::path(out_dir) / ("x_star" + ext), *x_star, binary);
  std::cout << "rows=" << augmented.rows() << " cols=" << augmented.cols() << "\n";
  return 0;
}

int cmd_metrics(const std::string& solution_path, const std::string& instance_path,
                const std::string& x_star_path, const std::string& kind, double nnz_eps) {
  const Matrix<double> sol = io::read_matrix(solution_path);
  const Matrix<double> inst = io::read_matrix(instance_path);
  nlohmann::json out;
  if (kind == "stationary") {
    if (inst.rows() != 1) throw std::invalid_argument("stationary instance must be a single row d^T");
    const Vector<double> d = inst.row(0).transpose();
    const auto problem = MatrixInstance<double>::row_stochastic(inst);
    out["nnz"] = nnz(sol, nnz_eps);
    out["obj"] = matrix_objective(problem, sol);
    out["kkt"] = kkt_residual_matrix(problem, sol);
    out["rres"] = rres(d, sol);
  } else {
    if (inst.cols() < 2) throw std::invalid_argument("instance must be [A | b]");
    const ProblemInstance<double> problem(inst.leftCols(inst.cols() - 1), inst.col(inst.cols() - 1));
    if (sol.cols() != 1 && sol.rows() != 1) throw std::invalid_argument("solution must be a vector");
    const Vector<double> x = sol.reshaped();
    out["nnz"] = nnz(x, nnz_eps);
    out["obj"] = simplex_objective(problem, x);
    out["kkt"] = kkt_residual(problem, x);
    if (!x_star_path.empty()) {
      const Vector<double> xs = io::read_matrix(x_star_path).reshaped();
      const double r = rsnr(xs, x);
      out["rsnr"] = std::isfinite(r) ? nlohmann::json(r) : nlohmann::json("inf");
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse simplex-constrained least squares: experiment runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment and write results.csv / report.json");
  std::string run_experiment_name;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<double> nnz_eps;
  bool trace = false;
  bool no_timing = false;
  std::string out_dir;
  run->add_option("--experiment", run_experiment_name, "lasso | hyperspectral | pbn | stationary")
      ->required();
  run->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "base seed (overrides the config)");
  run->add_option("--runs", runs, "number of seeds (overrides the config)");
  run->add_option("--nnz-eps", nnz_eps, "nnz threshold (default 1e-6)");
  run->add_flag("--trace", trace, "write per-iteration trace CSVs");
  run->add_flag("--no-timing", no_timing, "write ct_seconds as 0 for reproducible files");
  run->add_option("--out", out_dir, "output directory")->required();

  auto* gen = app.add_subcommand("gen", "Dump an instance as [A | b] (and x_star)");
  std::string gen_experiment_name;
  std::uint64_t gen_seed = 0;
  int j = 1;
  double snr_db = 40;
  std::string pbn = "P1";
  std::string format = "csv";
  std::string gen_out;
  gen->add_option("--experiment", gen_experiment_name, "lasso | hyperspectral | pbn | stationary")
      ->required();
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--j", j, "lasso size index 1..5")->check(CLI::Range(1, 5));
  gen->add_option("--snr-db", snr_db, "hyperspectral SNR in dB (inf for no noise)");
  gen->add_option("--pbn", pbn, "P1 | P2")->check(CLI::IsMember({"P1", "P2"}));
  gen->add_option("--format", format, "csv | bin")->check(CLI::IsMember({"csv", "bin"}));
  gen->add_option("--out", gen_out, "output directory")->required();

  auto* metrics = app.add_subcommand("metrics", "Evaluate a stored solution");
  std::string solution_path;
  std::string instance_path;
  std::string x_star_path;
  std::string kind = "simplex";
  double metrics_eps = kDefaultNnzEps;
  metrics->add_option("--solution", solution_path, "solution file (csv or binary)")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--instance", instance_path, "instance file [A | b], or d^T for stationary")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--x-star", x_star_path, "ground truth for RSNR")->check(CLI::ExistingFile);
  metrics->add_option("--kind", kind, "simplex | stationary")
      ->check(CLI::IsMember({"simplex", "stationary"}));
  metrics->add_option("--nnz-eps", metrics_eps, "nnz threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cmd_run(run_experiment_name, config_path, seed, runs, nnz_eps, trace, no_timing, out_dir);
    }
    if (*gen) return cmd_gen(gen_experiment_name, gen_seed, j, snr_db, pbn, format, gen_out);
    if (*metrics) return cmd_metrics(solution_path, instance_path, x_star_path, kind, metrics_eps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
