#pragma once

#include <cstdint>
#include <vector>

#include "skeptic/graph_solvers.hpp"
#include "skeptic/types.hpp"

namespace skeptic {

struct ConfusionCounts {
  long fp = 0;
  long fn = 0;
  double fpr = 0.0;  // fp / (#non-edges of truth)
  double fnr = 0.0;  // fn / |E|
};

// Exact set-difference counts of estimated vs true edges over the same d.
// Throws when the truth edge set is empty (fnr undefined).
ConfusionCounts confusion(const Graph& est, const Graph& truth);

struct RegPath {
  std::vector<double> lambdas;  // strictly decreasing
  std::vector<PrecisionEstimate> estimates;
  EstimatorKind estimator = EstimatorKind::pearson;
  SolverKind solver = SolverKind::glasso;
};

// Log-spaced grid from lambda_max (largest off-diagonal magnitude, the
// smallest value yielding the empty glasso graph) down to ratio*lambda_max.
std::vector<double> default_grid(const CorrelationMatrix& s, int points = 30,
                                 double min_ratio = 0.05);

// One estimate per grid value, warm-started where the solver supports it.
// glasso inputs are PSD-repaired on entry; the LP solvers take S as is.
RegPath solve_path(const CorrelationMatrix& s, SolverKind solver,
                   const std::vector<double>& grid,
                   const SolverConfig& cfg = {},
                   NeighborhoodRule nb_rule = NeighborhoodRule::AND,
                   int num_threads = 0);

struct OracleScore {
  double lambda_star = 0.0;
  Index index = 0;
  ConfusionCounts counts;
  double score = 0.0;  // fnr + fpr at lambda_star
};

// Grid minimizer of FNR + FPR; ties go to the larger lambda.
OracleScore oracle_score(const RegPath& path, const Graph& truth);

struct RocPoint {
  double lambda = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;  // 1 - fnr
};

std::vector<RocPoint> roc_points(const RegPath& path, const Graph& truth);

// Linear interpolation of tpr at a target fpr over one curve (curve ordered
// by lambda descending, i.e. fpr non-decreasing for nested paths).
double tpr_at_fpr(const std::vector<RocPoint>& curve, double fpr_target);

// ---------------------------------------------------------------------------

struct BenchmarkConfig {
  Index d = 100;
  std::vector<Index> n_values = {200};
  std::vector<TransformKind> transforms = {TransformKind::cdf};
  std::vector<EstimatorKind> estimators = {EstimatorKind::skeptic_rho,
                                           EstimatorKind::skeptic_tau,
                                           EstimatorKind::pearson};
  std::vector<SolverKind> solvers = {SolverKind::glasso};
  int trials = 20;
  int grid_size = 30;
  double lambda_min_ratio = 0.05;
  double sparsity = 0.125;
  int max_degree = 4;
  std::uint64_t seed = 0;
  SolverConfig solver_cfg;
  bool collect_roc = false;
  int num_threads = 0;
};

struct BenchmarkCell {
  TransformKind transform = TransformKind::linear;
  Index n = 0;
  SolverKind solver = SolverKind::glasso;
  EstimatorKind estimator = EstimatorKind::pearson;
  std::vector<double> fpr_pct;     // per successful trial, oracle-tuned
  std::vector<double> fnr_pct;
  std::vector<double> score_pct;   // fpr + fnr
  int failures = 0;
  std::vector<std::vector<RocPoint>> roc_curves;  // per trial when collected
};

struct BenchmarkResult {
  BenchmarkConfig config;
  std::vector<BenchmarkCell> cells;

  const BenchmarkCell* find(TransformKind t, Index n, SolverKind s,
                            EstimatorKind e) const;
};

BenchmarkResult benchmark(const BenchmarkConfig& config);

double mean_of(const std::vector<double>& v);
double sd_of(const std::vector<double>& v);     // sample standard deviation
double median_of(std::vector<double> v);

// ---------------------------------------------------------------------------

struct StarsResult {
  double lambda = 0.0;
  Index index = 0;
  bool warning = false;  // instability exceeded the cap everywhere
  std::vector<double> instability;           // per grid value
  std::vector<double> monotone_instability;  // running supremum, sparse first
};

// Stability selection: estimates per-edge selection frequencies over row
// subsamples, scores each lambda by the mean of 2 xi (1 - xi), monotonizes
// from the sparse end, and picks the smallest lambda still under the cap.
StarsResult stars_select(ConstMatrixRef data, EstimatorKind estimator,
                         SolverKind solver, const std::vector<double>& grid,
                         Index subsample_size, int num_subsamples,
                         double instability_cap, std::uint64_t seed,
                         const SolverConfig& cfg = {}, int num_threads = 0);

CorrelationMatrix estimate_correlation(ConstMatrixRef data, EstimatorKind kind,
                                       int num_threads = 0);

// ---------------------------------------------------------------------------

struct ConcentrationCell {
  Index n = 0;
  double bound = 0.0;               // theorem bound at this n
  std::vector<double> sup_devs;     // per trial
  std::vector<double> rate_stats;   // sup_dev * sqrt(n / log d)
  int violations = 0;
  double median_rate = 0.0;
};

struct ConcentrationReport {
  Index d = 0;
  int trials = 0;
  std::vector<ConcentrationCell> rho_cells;
  std::vector<ConcentrationCell> tau_cells;
};

// Sup-norm deviation of both rank-bridge estimators from the true
// correlation matrix of a synthetic model, against the theoretical bounds
// 8 pi sqrt(log d / n) and 2.45 pi sqrt(log d / n).
ConcentrationReport concentration_check(Index d,
                                        const std::vector<Index>& n_values,
                                        int trials, std::uint64_t seed,
                                        int num_threads = 0);

}  // namespace skeptic
