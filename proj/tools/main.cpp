// Command-line front end: synthetic data generation, correlation/graph
// estimation, regularization paths, the benchmark harness, edge-set scoring,
// and the concentration report.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skeptic/corr_estimators.hpp"
#include "skeptic/evaluation.hpp"
#include "skeptic/gaussian.hpp"
#include "skeptic/graph_solvers.hpp"
#include "skeptic/io.hpp"
#include "skeptic/pipeline.hpp"
#include "skeptic/rng.hpp"
#include "skeptic/synthetic_gen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace skeptic;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kSolverError = 3 };

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::string default_out_dir(std::uint64_t seed) {
  std::ostringstream ss;
  ss << "run_" << timestamp_utc() << "_seed" << seed;
  return ss.str();
}

// Tracks artifacts and writes manifest.json at the end of a run.
class Manifest {
 public:
  Manifest(std::string dir, std::string subcommand)
      : dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(dir_);
    j_["subcommand"] = std::move(subcommand);
    j_["version"] = kVersion;
    j_["started_utc"] = timestamp_utc();
  }

  json& options() { return j_["options"]; }

  std::string path(const std::string& name) {
    j_["artifacts"].push_back(name);
    return dir_ + "/" + name;
  }

  const std::string& dir() const { return dir_; }

  void finalize() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    j_["duration_seconds"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() /
        1000.0;
    write_text_file(dir_ + "/manifest.json", j_.dump(2) + "\n");
  }

 private:
  std::string dir_;
  json j_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<Index> parse_index_list(const std::string& csv) {
  std::vector<Index> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(static_cast<Index>(std::stol(tok)));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + csv);
  return out;
}

template <typename T>
std::vector<T> parse_enum_list(const std::string& csv,
                               T (*from_string)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(from_string(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + csv);
  return out;
}

// JSON config file as defaults: every key becomes --key=value unless that
// flag already appears on the command line.
std::vector<std::string> apply_config_defaults(std::vector<std::string> args) {
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw InvalidInputError("cannot open config '" + config_path + "'");
  json cfg = json::parse(in);
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    }
    if (present) continue;
    std::string rendered;
    if (value.is_string()) {
      rendered = value.get<std::string>();
    } else if (value.is_array()) {
      std::ostringstream ss;
      bool first = true;
      for (const auto& v : value) {
        if (!first) ss << ',';
        first = false;
        if (v.is_string()) {
          ss << v.get<std::string>();
        } else {
          ss << v.dump();
        }
      }
      rendered = ss.str();
    } else {
      rendered = value.dump();
    }
    args.push_back(flag + "=" + rendered);
  }
  return args;
}

Dataset load_input(const std::string& input, bool header, char delimiter,
                   bool log_ret, double winsorize_k) {
  CsvOptions opts;
  opts.header = header;
  opts.delimiter = delimiter;
  Dataset ds = ingest_csv(input, opts);
  if (log_ret) ds = log_returns(ds);
  if (winsorize_k > 0.0) ds = winsorize_mad(ds, winsorize_k);
  return ds;
}

struct CommonSolverFlags {
  double tol = 1e-6;
  int max_iterations = 10000;
  int max_sweeps = 200;
  double edge_threshold = 1e-6;
  double psd_floor = 1e-4;

  SolverConfig to_config() const {
    SolverConfig cfg;
    cfg.convergence_tol = tol;
    cfg.max_iterations = max_iterations;
    cfg.max_sweeps = max_sweeps;
    cfg.edge_threshold = edge_threshold;
    cfg.psd_floor = psd_floor;
    return cfg;
  }
};

void add_solver_flags(CLI::App* cmd, CommonSolverFlags& f) {
  cmd->add_option("--tol", f.tol, "convergence tolerance");
  cmd->add_option("--max-iterations", f.max_iterations,
                  "inner iteration limit");
  cmd->add_option("--max-sweeps", f.max_sweeps, "outer sweep limit (glasso)");
  cmd->add_option("--edge-threshold", f.edge_threshold,
                  "|omega_jk| cutoff for reporting an edge");
  cmd->add_option("--psd-floor", f.psd_floor,
                  "eigenvalue floor for PSD repair");
}

PrecisionEstimate run_solver(const CorrelationMatrix& s, SolverKind solver,
                             double lambda, const SolverConfig& cfg,
                             NeighborhoodRule rule, int threads) {
  switch (solver) {
    case SolverKind::glasso: {
      CorrelationMatrix input =
          s.psd_repaired ? s : psd_repair(s, cfg.psd_floor);
      return glasso(input, lambda, cfg);
    }
    case SolverKind::clime:
      return clime(s, lambda, cfg, threads);
    case SolverKind::gdantzig:
      return graphical_dantzig(s, lambda, cfg, threads);
    case SolverKind::neighborhood_lasso:
      return neighborhood_lasso(s, lambda, rule, cfg, threads);
  }
  throw InvalidInputError("unknown solver");
}

// ---------------------------------------------------------------------------

int cmd_simulate(Index d, Index n, const std::string& transform,
                 std::uint64_t seed, double s, int max_degree,
                 std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir(seed);
  Manifest manifest(out_dir, "simulate");
  manifest.options() = {{"d", d},       {"n", n},
                        {"transform", transform}, {"seed", seed},
                        {"s", s},       {"max_degree", max_degree}};

  Rng rng(seed);
  const Graph graph = generate_graph(d, s, max_degree, rng);
  const ModelSpec model = build_model(graph, transform_from_string(transform));
  const Matrix samples = sample_npn(model, n, rng);

  write_model(manifest.dir() + "/model", model, s, seed, max_degree);
  manifest.path("model/model.json");
  manifest.path("model/omega0.csv");
  manifest.path("model/sigma0.csv");
  manifest.path("model/edges.tsv");

  Dataset ds = dataset_from_matrix(samples, {}, "simulate");
  write_dataset_csv(manifest.path("samples.csv"), ds, /*header=*/true);
  manifest.finalize();
  std::cout << "simulate: d=" << d << " n=" << n << " edges="
            << graph.edge_count() << " -> " << out_dir << "\n";
  return kOk;
}

int cmd_estimate(const std::string& input, bool header, char delimiter,
                 bool log_ret, double winsorize_k, const std::string& estimator,
                 const std::string& solver, double lambda, bool use_stars,
                 int grid_size, double lambda_min_ratio, Index stars_size,
                 int stars_subsamples, double stars_cap,
                 const CommonSolverFlags& flags, const std::string& nb_rule,
                 std::uint64_t seed, int threads, std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir(seed);
  Manifest manifest(out_dir, "estimate");
  manifest.options() = {{"input", input},     {"estimator", estimator},
                        {"solver", solver},   {"lambda", lambda},
                        {"stars", use_stars}, {"seed", seed},
                        {"log_returns", log_ret}, {"winsorize", winsorize_k}};

  const Dataset ds = load_input(input, header, delimiter, log_ret, winsorize_k);
  const EstimatorKind est_kind = estimator_from_string(estimator);
  const SolverKind solver_kind = solver_from_string(solver);
  const SolverConfig cfg = flags.to_config();
  const NeighborhoodRule rule =
      nb_rule == "or" ? NeighborhoodRule::OR : NeighborhoodRule::AND;

  const CorrelationMatrix s = estimate_correlation(ds.matrix, est_kind, threads);
  write_matrix_csv(manifest.path("correlation.csv"), s.entries);
  write_text_file(manifest.path("correlation.json"),
                  correlation_summary_json(s));

  double chosen = lambda;
  if (use_stars) {
    const auto grid = default_grid(s, grid_size, lambda_min_ratio);
    Index b = stars_size > 0
                  ? stars_size
                  : static_cast<Index>(
                        10.0 * std::sqrt(static_cast<double>(ds.n())));
    b = std::min<Index>(b, ds.n() - 1);
    const auto stars =
        stars_select(ds.matrix, est_kind, solver_kind, grid, b,
                     stars_subsamples, stars_cap, seed, cfg, threads);
    chosen = stars.lambda;
    json sj = {{"lambda", stars.lambda},
               {"index", stars.index},
               {"warning", stars.warning},
               {"instability", stars.instability},
               {"monotone_instability", stars.monotone_instability},
               {"subsample_size", b},
               {"num_subsamples", stars_subsamples},
               {"instability_cap", stars_cap}};
    write_text_file(manifest.path("stars.json"), sj.dump(2) + "\n");
    if (stars.warning) {
      std::cerr << "warning: instability exceeded the cap at every lambda; "
                   "using the largest grid value\n";
    }
  } else if (!(lambda > 0.0)) {
    std::cerr << "estimate: provide --lambda > 0 or --stars\n";
    return kUsage;
  }

  const PrecisionEstimate est =
      run_solver(s, solver_kind, chosen, cfg, rule, threads);
  write_matrix_csv(manifest.path("omega.csv"), est.omega);
  write_edge_list(manifest.path("edges.tsv"), est.edge_set, &est.omega);
  write_text_file(manifest.path("diagnostics.json"),
                  precision_diagnostics_json(est));
  manifest.finalize();
  std::cout << "estimate: " << estimator << "+" << solver << " lambda="
            << chosen << " edges=" << est.edge_set.edge_count() << " -> "
            << out_dir << "\n";
  return kOk;
}

int cmd_path(const std::string& input, bool header, char delimiter,
             bool log_ret, double winsorize_k, const std::string& estimator,
             const std::string& solver, int grid_size, double lambda_min_ratio,
             const std::string& truth_path, const CommonSolverFlags& flags,
             const std::string& nb_rule, std::uint64_t seed, int threads,
             std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir(seed);
  Manifest manifest(out_dir, "path");
  manifest.options() = {{"input", input},
                        {"estimator", estimator},
                        {"solver", solver},
                        {"grid_size", grid_size},
                        {"lambda_min_ratio", lambda_min_ratio}};

  const Dataset ds = load_input(input, header, delimiter, log_ret, winsorize_k);
  const EstimatorKind est_kind = estimator_from_string(estimator);
  const SolverKind solver_kind = solver_from_string(solver);
  const SolverConfig cfg = flags.to_config();
  const NeighborhoodRule rule =
      nb_rule == "or" ? NeighborhoodRule::OR : NeighborhoodRule::AND;

  const CorrelationMatrix s = estimate_correlation(ds.matrix, est_kind, threads);
  const auto grid = default_grid(s, grid_size, lambda_min_ratio);
  const RegPath path = solve_path(s, solver_kind, grid, cfg, rule, threads);

  {
    std::ofstream out(manifest.path("path.csv"));
    out << "lambda,edge_count,iterations,final_residual\n";
    for (size_t i = 0; i < path.estimates.size(); ++i) {
      const auto& est = path.estimates[i];
      out << format_double(path.lambdas[i]) << ',' << est.edge_set.edge_count()
          << ',' << est.diagnostics.iterations << ','
          << format_double(est.diagnostics.final_residual) << '\n';
    }
  }

  if (!truth_path.empty()) {
    const Graph truth = read_edge_list(truth_path, ds.d());
    const auto curve = roc_points(path, truth);
    write_roc_csv(manifest.path("roc.csv"), {curve});
    const auto oracle = oracle_score(path, truth);
    json oj = {{"lambda_star", oracle.lambda_star},
               {"index", oracle.index},
               {"fpr", oracle.counts.fpr},
               {"fnr", oracle.counts.fnr},
               {"score", oracle.score}};
    write_text_file(manifest.path("oracle.json"), oj.dump(2) + "\n");
  }
  manifest.finalize();
  std::cout << "path: " << grid.size() << " lambdas -> " << out_dir << "\n";
  return kOk;
}

int cmd_benchmark(Index d, const std::string& n_list,
                  const std::string& transforms, const std::string& estimators,
                  const std::string& solvers, int trials, int grid_size,
                  double lambda_min_ratio, double sparsity, int max_degree,
                  std::uint64_t seed, bool emit_roc,
                  const CommonSolverFlags& flags, int threads,
                  std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir(seed);
  Manifest manifest(out_dir, "benchmark");

  BenchmarkConfig config;
  config.d = d;
  config.n_values = parse_index_list(n_list);
  config.transforms = parse_enum_list(transforms, transform_from_string);
  config.estimators = parse_enum_list(estimators, estimator_from_string);
  config.solvers = parse_enum_list(solvers, solver_from_string);
  config.trials = trials;
  config.grid_size = grid_size;
  config.lambda_min_ratio = lambda_min_ratio;
  config.sparsity = sparsity;
  config.max_degree = max_degree;
  config.seed = seed;
  config.solver_cfg = flags.to_config();
  config.collect_roc = emit_roc;
  config.num_threads = threads;

  manifest.options() = {{"d", d},
                        {"n", n_list},
                        {"transforms", transforms},
                        {"estimators", estimators},
                        {"solvers", solvers},
                        {"trials", trials},
                        {"grid_size", grid_size},
                        {"lambda_min_ratio", lambda_min_ratio},
                        {"s", sparsity},
                        {"max_degree", max_degree},
                        {"seed", seed}};

  const BenchmarkResult result = benchmark(config);
  write_benchmark_csv(manifest.path("table.csv"), result);
  write_benchmark_table(manifest.path("table.txt"), result);
  if (emit_roc) {
    for (const auto& cell : result.cells) {
      std::ostringstream name;
      name << "roc_" << to_string(cell.transform) << "_n" << cell.n << "_"
           << to_string(cell.solver) << "_" << to_string(cell.estimator)
           << ".csv";
      write_roc_csv(manifest.path(name.str()), cell.roc_curves);
    }
  }
  manifest.finalize();

  std::ifstream table(out_dir + "/table.txt");
  std::cout << table.rdbuf();
  return kOk;
}

int cmd_eval(const std::string& est_path, const std::string& truth_path,
             Index d, std::string out_dir) {
  const Graph est = read_edge_list(est_path, d);
  const Graph truth = read_edge_list(truth_path, d);
  const auto counts = confusion(est, truth);
  json j = {{"d", d},
            {"fp", counts.fp},
            {"fn", counts.fn},
            {"fpr", counts.fpr},
            {"fnr", counts.fnr},
            {"score", counts.fpr + counts.fnr}};
  std::cout << j.dump(2) << "\n";
  if (!out_dir.empty()) {
    Manifest manifest(out_dir, "eval");
    manifest.options() = {{"edges", est_path}, {"truth", truth_path}, {"d", d}};
    write_text_file(manifest.path("eval.json"), j.dump(2) + "\n");
    manifest.finalize();
  }
  return kOk;
}

int cmd_concentration(Index d, const std::string& n_list, int trials,
                      std::uint64_t seed, int threads, std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir(seed);
  Manifest manifest(out_dir, "concentration");
  manifest.options() = {
      {"d", d}, {"n", n_list}, {"trials", trials}, {"seed", seed}};
  const auto report =
      concentration_check(d, parse_index_list(n_list), trials, seed, threads);
  write_text_file(manifest.path("concentration.json"),
                  concentration_report_json(report));
  manifest.finalize();
  for (size_t i = 0; i < report.rho_cells.size(); ++i) {
    const auto& r = report.rho_cells[i];
    const auto& t = report.tau_cells[i];
    std::cout << "n=" << r.n << " spearman: max_dev="
              << *std::max_element(r.sup_devs.begin(), r.sup_devs.end())
              << " bound=" << r.bound << " violations=" << r.violations
              << " | kendall: max_dev="
              << *std::max_element(t.sup_devs.begin(), t.sup_devs.end())
              << " bound=" << t.bound << " violations=" << t.violations << "\n";
  }
  std::cout << "-> " << out_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-based correlation graph estimation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // simulate --------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset");
  Index sim_d = 100, sim_n = 200;
  std::string sim_transform = "cdf";
  std::uint64_t sim_seed = 0;
  double sim_s = kDefaultSparsity;
  int sim_max_degree = kDefaultMaxDegree;
  std::string sim_out;
  std::string config_path;  // consumed by apply_config_defaults
  sim->add_option("--d", sim_d, "number of variables");
  sim->add_option("--n", sim_n, "number of samples");
  sim->add_option("--transform", sim_transform, "power|cdf|linear");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--s", sim_s, "sparsity scale of the geometric graph");
  sim->add_option("--max-degree", sim_max_degree, "degree cap");
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--config", config_path, "JSON config file with defaults");

  // estimate ----------------------------------------------------------------
  auto* est = app.add_subcommand("estimate",
                                 "estimate a correlation matrix and graph");
  std::string est_input, est_estimator = "spearman", est_solver = "glasso";
  bool est_header = false;
  std::string est_delim = ",";
  bool est_logret = false;
  double est_winsorize = 0.0;
  double est_lambda = 0.0;
  bool est_stars = false;
  int est_grid = 30;
  double est_ratio = 0.05;
  Index est_stars_size = 0;
  int est_stars_subsamples = 20;
  double est_stars_cap = 0.05;
  CommonSolverFlags est_flags;
  std::string est_rule = "and";
  std::uint64_t est_seed = 0;
  int est_threads = 0;
  std::string est_out;
  est->add_option("--input", est_input, "input CSV")->required();
  est->add_flag("--header", est_header, "input has a header row");
  est->add_option("--delimiter", est_delim, "field delimiter");
  est->add_flag("--log-returns", est_logret, "apply log-return transform");
  est->add_option("--winsorize", est_winsorize,
                  "clip at k mean absolute deviations (0 = off)");
  est->add_option("--estimator", est_estimator,
                  "spearman|kendall|normal_score|pearson");
  est->add_option("--solver", est_solver, "glasso|clime|gdantzig|mb");
  est->add_option("--lambda", est_lambda, "regularization value");
  est->add_flag("--stars", est_stars, "select lambda by stability");
  est->add_option("--grid-size", est_grid, "grid size (stars)");
  est->add_option("--lambda-min-ratio", est_ratio, "grid floor ratio (stars)");
  est->add_option("--stars-subsample-size", est_stars_size,
                  "rows per subsample (default floor(10 sqrt n))");
  est->add_option("--stars-subsamples", est_stars_subsamples,
                  "number of subsamples");
  est->add_option("--stars-cap", est_stars_cap, "instability cap");
  est->add_option("--nb-rule", est_rule, "and|or (neighborhood lasso)");
  est->add_option("--seed", est_seed, "random seed (stars subsampling)");
  est->add_option("--threads", est_threads, "worker threads (0 = auto)");
  est->add_option("--out", est_out, "output directory");
  est->add_option("--config", config_path, "JSON config file with defaults");
  add_solver_flags(est, est_flags);

  // path ----------------------------------------------------------------
  auto* pth = app.add_subcommand("path", "solve a regularization path");
  std::string path_input, path_estimator = "spearman", path_solver = "glasso";
  bool path_header = false;
  std::string path_delim = ",";
  bool path_logret = false;
  double path_winsorize = 0.0;
  int path_grid = 30;
  double path_ratio = 0.05;
  std::string path_truth;
  CommonSolverFlags path_flags;
  std::string path_rule = "and";
  std::uint64_t path_seed = 0;
  int path_threads = 0;
  std::string path_out;
  pth->add_option("--input", path_input, "input CSV")->required();
  pth->add_flag("--header", path_header, "input has a header row");
  pth->add_option("--delimiter", path_delim, "field delimiter");
  pth->add_flag("--log-returns", path_logret, "apply log-return transform");
  pth->add_option("--winsorize", path_winsorize,
                  "clip at k mean absolute deviations (0 = off)");
  pth->add_option("--estimator", path_estimator,
                  "spearman|kendall|normal_score|pearson");
  pth->add_option("--solver", path_solver, "glasso|clime|gdantzig|mb");
  pth->add_option("--grid-size", path_grid, "number of grid points");
  pth->add_option("--lambda-min-ratio", path_ratio, "grid floor ratio");
  pth->add_option("--truth", path_truth, "truth edge list (adds roc.csv)");
  pth->add_option("--nb-rule", path_rule, "and|or (neighborhood lasso)");
  pth->add_option("--seed", path_seed, "seed recorded in the manifest");
  pth->add_option("--threads", path_threads, "worker threads (0 = auto)");
  pth->add_option("--out", path_out, "output directory");
  pth->add_option("--config", config_path, "JSON config file with defaults");
  add_solver_flags(pth, path_flags);

  // benchmark ----------------------------------------------------------------
  auto* bench = app.add_subcommand("benchmark", "synthetic recovery benchmark");
  Index bench_d = 100;
  std::string bench_n = "200";
  std::string bench_transforms = "cdf,linear,power";
  std::string bench_estimators = "spearman,kendall,pearson";
  std::string bench_solvers = "glasso";
  int bench_trials = 20;
  int bench_grid = 30;
  double bench_ratio = 0.05;
  double bench_s = kDefaultSparsity;
  int bench_max_degree = kDefaultMaxDegree;
  std::uint64_t bench_seed = 0;
  bool bench_roc = false;
  CommonSolverFlags bench_flags;
  int bench_threads = 0;
  std::string bench_out;
  bench->add_option("--d", bench_d, "number of variables");
  bench->add_option("--n", bench_n, "comma-separated sample sizes");
  bench->add_option("--transforms", bench_transforms,
                    "comma-separated transforms");
  bench->add_option("--estimators", bench_estimators,
                    "comma-separated estimators");
  bench->add_option("--solvers", bench_solvers, "comma-separated solvers");
  bench->add_option("--trials", bench_trials, "Monte Carlo trials per cell");
  bench->add_option("--grid-size", bench_grid, "number of grid points");
  bench->add_option("--lambda-min-ratio", bench_ratio, "grid floor ratio");
  bench->add_option("--s", bench_s, "sparsity scale");
  bench->add_option("--max-degree", bench_max_degree, "degree cap");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_flag("--emit-roc", bench_roc, "dump per-trial ROC points");
  bench->add_option("--threads", bench_threads, "worker threads (0 = auto)");
  bench->add_option("--out", bench_out, "output directory");
  bench->add_option("--config", config_path, "JSON config file with defaults");
  add_solver_flags(bench, bench_flags);

  // eval ----------------------------------------------------------------
  auto* evl = app.add_subcommand("eval", "score an edge list against truth");
  std::string eval_edges, eval_truth, eval_out;
  Index eval_d = 0;
  evl->add_option("--edges", eval_edges, "estimated edge list")->required();
  evl->add_option("--truth", eval_truth, "true edge list")->required();
  evl->add_option("--d", eval_d, "number of vertices")->required();
  evl->add_option("--out", eval_out, "output directory (optional)");
  evl->add_option("--config", config_path, "JSON config file with defaults");

  // concentration -----------------------------------------------------------
  auto* conc = app.add_subcommand("concentration",
                                  "sup-norm deviation report vs bounds");
  Index conc_d = 50;
  std::string conc_n = "250,1000,4000";
  int conc_trials = 50;
  std::uint64_t conc_seed = 0;
  int conc_threads = 0;
  std::string conc_out;
  conc->add_option("--d", conc_d, "number of variables");
  conc->add_option("--n", conc_n, "comma-separated sample sizes");
  conc->add_option("--trials", conc_trials, "trials per sample size");
  conc->add_option("--seed", conc_seed, "master seed");
  conc->add_option("--threads", conc_threads, "worker threads (0 = auto)");
  conc->add_option("--out", conc_out, "output directory");
  conc->add_option("--config", config_path, "JSON config file with defaults");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_defaults(std::move(args));
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_d, sim_n, sim_transform, sim_seed, sim_s,
                          sim_max_degree, sim_out);
    }
    if (est->parsed()) {
      return cmd_estimate(est_input, est_header, est_delim[0], est_logret,
                          est_winsorize, est_estimator, est_solver, est_lambda,
                          est_stars, est_grid, est_ratio, est_stars_size,
                          est_stars_subsamples, est_stars_cap, est_flags,
                          est_rule, est_seed, est_threads, est_out);
    }
    if (pth->parsed()) {
      return cmd_path(path_input, path_header, path_delim[0], path_logret,
                      path_winsorize, path_estimator, path_solver, path_grid,
                      path_ratio, path_truth, path_flags, path_rule, path_seed,
                      path_threads, path_out);
    }
    if (bench->parsed()) {
      return cmd_benchmark(bench_d, bench_n, bench_transforms,
                           bench_estimators, bench_solvers, bench_trials,
                           bench_grid, bench_ratio, bench_s, bench_max_degree,
                           bench_seed, bench_roc, bench_flags, bench_threads,
                           bench_out);
    }
    if (evl->parsed()) {
      return cmd_eval(eval_edges, eval_truth, eval_d, eval_out);
    }
    if (conc->parsed()) {
      return cmd_concentration(conc_d, conc_n, conc_trials, conc_seed,
                               conc_threads, conc_out);
    }
    std::cerr << "no subcommand\n";
    return kUsage;
  } catch (const InvalidInputError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const UndefinedCorrelationError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
}
