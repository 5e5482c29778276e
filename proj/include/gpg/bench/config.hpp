#ifndef GPG_BENCH_CONFIG_HPP
#define GPG_BENCH_CONFIG_HPP

#include "gpg/baselines.hpp"
#include "gpg/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpg::bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Lasso, Hyperspectral, Pbn, Stationary };
enum class SolverMethod { Gpg, Pg, Admm };

ExperimentKind parse_experiment(const std::string& name);
const char* to_string(ExperimentKind kind);
const char* to_string(SolverMethod method);

struct SolverSpec {
  std::string name;
  SolverMethod method{SolverMethod::Gpg};
  GpgParams<double> gpg;
  PgParams<double> pg;
  AdmmParams<double> admm;
  // Fixed PG step 1 / ||A^T A||_2 computed from the instance.
  bool pg_auto_step{false};
};

struct ExperimentConfig {
  ExperimentKind experiment{ExperimentKind::Lasso};
  int j{1};
  double snr_db{40};
  int pbn{1};  // 1 or 2
  std::uint64_t seed{0};
  // Runs use seeds seed, seed + 1, ...
  int runs{1};
  double tol{1e-4};
  int it_max{2000};
  double nnz_eps{1e-6};
  std::vector<SolverSpec> solvers;
  std::filesystem::path output_path{"."};
  bool trace{false};
  // When false the ct_seconds column is written as 0 so reports are byte-reproducible.
  bool timing{true};
};

// Ordered key/value pairs of the flat config grammar:
//
//   line    := blank | comment | key '=' value
//   comment := '#' anything
//   key     := [A-Za-z0-9_.]+
//
// Whitespace around keys and values is ignored; '#' starts a comment anywhere.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::filesystem::path& path);

// Experiment defaults: tolerances, iteration caps, lambda settings and the solver list
// {gpg_fixed, gpg, pg, admm} (stationary: {gpg_fixed, gpg, gpg_large_lambda, pg}).
ExperimentConfig default_config(ExperimentKind kind, int j = 1);

// Defaults for `kind`, then every key applied in order. Top-level keys: j, snr_db, pbn,
// seed, runs, tol, it_max, nnz_eps, solvers, trace, timing, output. Per-solver keys are
// '<solver>.<param>'. Unknown keys are errors.
ExperimentConfig make_config(ExperimentKind kind, const KeyValues& kv);

}  // namespace gpg::bench

#endif  // GPG_BENCH_CONFIG_HPP
