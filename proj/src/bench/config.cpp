#include "gpg/bench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace gpg::bench {

namespace {

// Initial step per experiment; the loop resets to it at every outer iteration.
constexpr double kAlpha0Lasso = 1.0;
constexpr double kAlpha0Hyperspectral = 0.01;
constexpr double kAlpha0Pbn = 1.7;
constexpr double kAlpha0Stationary = 50.0;

constexpr double kLassoLambda[] = {1e-2, 0.7071e-2, 0.5774e-2, 0.5e-2, 0.5e-2};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  if (!value.empty() && value.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || std::isnan(out)) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return out;
}

double to_finite(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (!std::isfinite(v)) throw ConfigError(key + ": expected a finite number");
  return v;
}

long long to_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

SolverMethod infer_method(const std::string& name) {
  if (name.rfind("gpg", 0) == 0) return SolverMethod::Gpg;
  if (name.rfind("pg", 0) == 0) return SolverMethod::Pg;
  if (name.rfind("admm", 0) == 0) return SolverMethod::Admm;
  throw ConfigError("solver '" + name + "': cannot infer method; set " + name + ".method");
}

SolverMethod parse_method(const std::string& key, const std::string& value) {
  if (value == "gpg") return SolverMethod::Gpg;
  if (value == "pg") return SolverMethod::Pg;
  if (value == "admm") return SolverMethod::Admm;
  throw ConfigError(key + ": unknown method '" + value + "'");
}

double default_alpha0(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::Lasso:
      return kAlpha0Lasso;
    case ExperimentKind::Hyperspectral:
      return kAlpha0Hyperspectral;
    case ExperimentKind::Pbn:
      return kAlpha0Pbn;
    case ExperimentKind::Stationary:
      return kAlpha0Stationary;
  }
  return 1.0;
}

// Regularization weight used by both GPG variants and carried by ADMM for reporting.
double default_lambda(const ExperimentConfig& cfg, const std::string& name, bool fixed) {
  switch (cfg.experiment) {
    case ExperimentKind::Lasso:
      return kLassoLambda[cfg.j - 1];
    case ExperimentKind::Hyperspectral:
      return fixed ? 1e-2 : 3e-2;
    case ExperimentKind::Pbn:
      return 1e-2;
    case ExperimentKind::Stationary:
      if (fixed || name == "gpg_large_lambda") return 1e-3;
      return 5e-4;
  }
  return 1e-2;
}

SolverSpec default_solver(const ExperimentConfig& cfg, const std::string& name,
                          SolverMethod method) {
  SolverSpec s;
  s.name = name;
  s.method = method;
  const bool fixed = name.find("fixed") != std::string::npos;
  s.gpg.alpha0 = default_alpha0(cfg);
  s.gpg.lambda0 = default_lambda(cfg, name, fixed);
  s.gpg.fixed_lambda = fixed;
  s.gpg.tol = cfg.tol;
  s.gpg.it_max = cfg.it_max;
  if (cfg.experiment == ExperimentKind::Stationary) {
    s.gpg.delta2 = 1e-5;
    s.gpg.rho3 = 0.95;
  }
  s.pg.tol = cfg.tol;
  s.pg.it_max = cfg.it_max;
  s.admm.lambda = default_lambda(cfg, name, true);
  s.admm.tol = cfg.tol;
  s.admm.it_max = cfg.it_max;
  return s;
}

std::vector<std::string> default_solver_names(ExperimentKind kind) {
  if (kind == ExperimentKind::Stationary) return {"gpg_fixed", "gpg", "gpg_large_lambda", "pg"};
  return {"gpg_fixed", "gpg", "pg", "admm"};
}

void apply_solver_key(SolverSpec& s, const std::string& param, const std::string& key,
                      const std::string& value) {
  if (param == "method") return;  // consumed when the spec was created
  if (param == "tol") {
    const double t = to_finite(key, value);
    s.gpg.tol = s.pg.tol = s.admm.tol = t;
  } else if (param == "it_max") {
    const int n = static_cast<int>(to_int(key, value));
    s.gpg.it_max = s.pg.it_max = s.admm.it_max = n;
  } else if (s.method == SolverMethod::Gpg) {
    auto& g = s.gpg;
    if (param == "alpha0") g.alpha0 = to_finite(key, value);
    else if (param == "lambda0" || param == "lambda") g.lambda0 = to_finite(key, value);
    else if (param == "rho1") g.rho1 = to_finite(key, value);
    else if (param == "rho2") g.rho2 = to_finite(key, value);
    else if (param == "rho3") g.rho3 = to_finite(key, value);
    else if (param == "gamma1") g.gamma1 = to_finite(key, value);
    else if (param == "gamma2") g.gamma2 = to_finite(key, value);
    else if (param == "delta1") g.delta1 = to_finite(key, value);
    else if (param == "delta2") g.delta2 = to_finite(key, value);
    else if (param == "inner_max") g.inner_max = static_cast<int>(to_int(key, value));
    else if (param == "fixed_lambda") g.fixed_lambda = to_bool(key, value);
    else throw ConfigError("unknown key '" + key + "'");
  } else if (s.method == SolverMethod::Pg) {
    if (param == "step") {
      if (value == "backtracking") {
        s.pg.step_rule = Backtracking{};
        s.pg_auto_step = false;
      } else if (value == "fixed") {
        s.pg.step_rule = FixedStep{};
        s.pg_auto_step = true;
      } else {
        throw ConfigError(key + ": expected backtracking or fixed");
      }
    } else if (param == "fixed_step") {
      s.pg_auto_step = value == "auto";
      s.pg.step_rule = FixedStep{s.pg_auto_step ? 1.0 : to_finite(key, value)};
    } else if (param == "beta" || param == "c") {
      auto* bt = std::get_if<Backtracking>(&s.pg.step_rule);
      if (!bt) throw ConfigError(key + ": only valid with step = backtracking");
      (param == "beta" ? bt->beta : bt->c) = to_finite(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  } else {
    if (param == "lambda") s.admm.lambda = to_finite(key, value);
    else if (param == "mu") s.admm.mu = to_finite(key, value);
    else throw ConfigError("unknown key '" + key + "'");
  }
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.j < 1 || cfg.j > 5) throw ConfigError("j must lie in 1..5");
  if (cfg.pbn != 1 && cfg.pbn != 2) throw ConfigError("pbn must be P1 or P2");
  if (cfg.runs < 1) throw ConfigError("runs must be >= 1");
  if (!(cfg.nnz_eps >= 0)) throw ConfigError("nnz_eps must be nonnegative");
  if (cfg.solvers.empty()) throw ConfigError("no solvers configured");
  if (cfg.experiment == ExperimentKind::Stationary) {
    for (const auto& s : cfg.solvers) {
      if (s.method == SolverMethod::Admm) {
        throw ConfigError("solver '" + s.name + "': admm is not available for the stationary experiment");
      }
    }
  }
  for (const auto& s : cfg.solvers) {
    try {
      switch (s.method) {
        case SolverMethod::Gpg:
          s.gpg.validate();
          break;
        case SolverMethod::Pg:
          s.pg.validate();
          break;
        case SolverMethod::Admm:
          s.admm.validate();
          break;
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("solver '" + s.name + "': " + e.what());
    }
  }
}

}  // namespace

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "lasso") return ExperimentKind::Lasso;
  if (name == "hyperspectral") return ExperimentKind::Hyperspectral;
  if (name == "pbn") return ExperimentKind::Pbn;
  if (name == "stationary") return ExperimentKind::Stationary;
  throw ConfigError("unknown experiment '" + name + "' (lasso, hyperspectral, pbn, stationary)");
}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Lasso:
      return "lasso";
    case ExperimentKind::Hyperspectral:
      return "hyperspectral";
    case ExperimentKind::Pbn:
      return "pbn";
    case ExperimentKind::Stationary:
      return "stationary";
  }
  return "unknown";
}

const char* to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::Gpg:
      return "gpg";
    case SolverMethod::Pg:
      return "pg";
    case SolverMethod::Admm:
      return "admm";
  }
  return "unknown";
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    const bool key_ok = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
    if (!key_ok) throw ConfigError("line " + std::to_string(line_no) + ": bad key '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

KeyValues parse_key_values_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_key_values(in);
}

ExperimentConfig default_config(ExperimentKind kind, int j) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.j = j;
  switch (kind) {
    case ExperimentKind::Lasso:
      cfg.tol = 1e-4;
      cfg.it_max = 2000;
      break;
    case ExperimentKind::Hyperspectral:
    case ExperimentKind::Pbn:
      cfg.tol = 1e-5;
      cfg.it_max = 3000;
      break;
    case ExperimentKind::Stationary:
      cfg.tol = 1e-6;
      cfg.it_max = 6000;
      break;
  }
  if (j < 1 || j > 5) throw ConfigError("j must lie in 1..5");
  for (const auto& name : default_solver_names(kind)) {
    cfg.solvers.push_back(default_solver(cfg, name, infer_method(name)));
  }
  return cfg;
}

ExperimentConfig make_config(ExperimentKind kind, const KeyValues& kv) {
  ExperimentConfig cfg = default_config(kind);

  // Pass 1: top-level keys and solver methods.
  std::vector<std::string> names;
  bool names_set = false;
  std::map<std::string, SolverMethod> methods;
  for (const auto& [key, value] : kv) {
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      if (key.substr(dot + 1) == "method") methods[key.substr(0, dot)] = parse_method(key, value);
      continue;
    }
    if (key == "j") cfg.j = static_cast<int>(to_int(key, value));
    else if (key == "snr_db") cfg.snr_db = to_double(key, value);
    else if (key == "pbn") {
      if (value == "P1" || value == "p1" || value == "1") cfg.pbn = 1;
      else if (value == "P2" || value == "p2" || value == "2") cfg.pbn = 2;
      else throw ConfigError("pbn: expected P1 or P2");
    } else if (key == "seed") cfg.seed = to_u64(key, value);
    else if (key == "runs") cfg.runs = static_cast<int>(to_int(key, value));
    else if (key == "tol") cfg.tol = to_finite(key, value);
    else if (key == "it_max") cfg.it_max = static_cast<int>(to_int(key, value));
    else if (key == "nnz_eps") cfg.nnz_eps = to_finite(key, value);
    else if (key == "solvers") {
      names = split_list(value);
      names_set = true;
    } else if (key == "trace") cfg.trace = to_bool(key, value);
    else if (key == "timing") cfg.timing = to_bool(key, value);
    else if (key == "output") cfg.output_path = value;
    else throw ConfigError("unknown key '" + key + "'");
  }
  if (cfg.j < 1 || cfg.j > 5) throw ConfigError("j must lie in 1..5");

  if (!names_set) names = default_solver_names(kind);
  std::set<std::string> seen;
  cfg.solvers.clear();
  for (const auto& name : names) {
    if (!valid_name(name)) throw ConfigError("bad solver name '" + name + "'");
    if (!seen.insert(name).second) throw ConfigError("duplicate solver '" + name + "'");
    const auto m = methods.find(name);
    cfg.solvers.push_back(default_solver(cfg, name, m != methods.end() ? m->second : infer_method(name)));
  }
  for (const auto& [name, method] : methods) {
    if (!seen.count(name)) throw ConfigError("'" + name + ".method' names an unconfigured solver");
  }

  // Pass 2: per-solver keys.
  for (const auto& [key, value] : kv) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const std::string name = key.substr(0, dot);
    const std::string param = key.substr(dot + 1);
    auto it = std::find_if(cfg.solvers.begin(), cfg.solvers.end(),
                           [&](const SolverSpec& s) { return s.name == name; });
    if (it == cfg.solvers.end()) throw ConfigError("'" + key + "' names an unconfigured solver");
    apply_solver_key(*it, param, key, value);
  }
  validate(cfg);
  return cfg;
}

}  // namespace gpg::bench
