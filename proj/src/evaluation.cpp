#include "skeptic/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "skeptic/corr_estimators.hpp"
#include "skeptic/parallel.hpp"
#include "skeptic/rng.hpp"
#include "skeptic/synthetic_gen.hpp"

namespace skeptic {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

long count_in(const Graph& a, const Graph& b) {
  // edges of a present in b (both normalized)
  long count = 0;
  for (const auto& e : a.edges) {
    if (std::binary_search(b.edges.begin(), b.edges.end(), e)) ++count;
  }
  return count;
}

}  // namespace

ConfusionCounts confusion(const Graph& est, const Graph& truth) {
  if (est.d != truth.d) {
    throw InvalidInputError("confusion: graphs have different vertex counts");
  }
  if (truth.edges.empty()) {
    throw InvalidInputError(
        "confusion: empty truth edge set leaves fnr undefined");
  }
  ConfusionCounts c;
  const long shared = count_in(est, truth);
  c.fp = static_cast<long>(est.edges.size()) - shared;
  c.fn = static_cast<long>(truth.edges.size()) - shared;
  const long pairs = static_cast<long>(truth.d) * (truth.d - 1) / 2;
  const long non_edges = pairs - static_cast<long>(truth.edges.size());
  c.fpr = non_edges > 0 ? static_cast<double>(c.fp) / non_edges : 0.0;
  c.fnr = static_cast<double>(c.fn) / static_cast<double>(truth.edges.size());
  return c;
}

std::vector<double> default_grid(const CorrelationMatrix& s, int points,
                                 double min_ratio) {
  if (points < 1) throw InvalidInputError("default_grid: need >= 1 point");
  const Index d = s.dim();
  double lambda_max = 0.0;
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      lambda_max = std::max(lambda_max, std::abs(s.entries(j, k)));
    }
  }
  if (lambda_max <= 0.0) lambda_max = 1.0;  // diagonal input
  std::vector<double> grid(static_cast<size_t>(points));
  if (points == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double log_max = std::log(lambda_max);
  const double log_min = std::log(lambda_max * min_ratio);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[static_cast<size_t>(i)] = std::exp(log_max + t * (log_min - log_max));
  }
  return grid;
}

RegPath solve_path(const CorrelationMatrix& s, SolverKind solver,
                   const std::vector<double>& grid, const SolverConfig& cfg,
                   NeighborhoodRule nb_rule, int num_threads) {
  if (grid.empty()) throw InvalidInputError("solve_path: empty grid");
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] > grid[i + 1])) {
      throw InvalidInputError("solve_path: grid must be strictly decreasing");
    }
  }
  if (grid.back() <= 0.0) {
    throw InvalidInputError("solve_path: grid values must be positive");
  }

  CorrelationMatrix input = s;
  if (solver == SolverKind::glasso && !s.psd_repaired) {
    input = psd_repair(s, cfg.psd_floor);
  }

  RegPath path;
  path.estimator = s.kind;
  path.solver = solver;
  path.lambdas = grid;
  path.estimates.reserve(grid.size());

  GlassoWarmState warm;
  for (double lambda : grid) {
    try {
      switch (solver) {
        case SolverKind::glasso:
          path.estimates.push_back(glasso(input, lambda, cfg, &warm));
          break;
        case SolverKind::clime:
          path.estimates.push_back(clime(input, lambda, cfg, num_threads));
          break;
        case SolverKind::gdantzig:
          path.estimates.push_back(
              graphical_dantzig(input, lambda, cfg, num_threads));
          break;
        case SolverKind::neighborhood_lasso:
          path.estimates.push_back(
              neighborhood_lasso(input, lambda, nb_rule, cfg, num_threads));
          break;
      }
    } catch (const Error& e) {
      throw Error("solve_path: solver failed at lambda=" +
                  std::to_string(lambda) + ": " + e.what());
    }
  }
  return path;
}

OracleScore oracle_score(const RegPath& path, const Graph& truth) {
  if (path.estimates.empty()) {
    throw InvalidInputError("oracle_score: empty path");
  }
  OracleScore best;
  bool first = true;
  for (size_t i = 0; i < path.estimates.size(); ++i) {
    const auto counts = confusion(path.estimates[i].edge_set, truth);
    const double score = counts.fnr + counts.fpr;
    if (first || score < best.score) {  // ties keep the larger lambda
      best.lambda_star = path.lambdas[i];
      best.index = static_cast<Index>(i);
      best.counts = counts;
      best.score = score;
      first = false;
    }
  }
  return best;
}

std::vector<RocPoint> roc_points(const RegPath& path, const Graph& truth) {
  std::vector<RocPoint> out;
  out.reserve(path.estimates.size());
  for (size_t i = 0; i < path.estimates.size(); ++i) {
    const auto counts = confusion(path.estimates[i].edge_set, truth);
    out.push_back({path.lambdas[i], counts.fpr, 1.0 - counts.fnr});
  }
  return out;
}

double tpr_at_fpr(const std::vector<RocPoint>& curve, double fpr_target) {
  if (curve.empty()) throw InvalidInputError("tpr_at_fpr: empty curve");
  // Upper envelope first: a vertical riser at one fpr contributes its top.
  std::vector<RocPoint> pts = curve;
  std::sort(pts.begin(), pts.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.fpr != b.fpr) return a.fpr < b.fpr;
    return a.tpr < b.tpr;
  });
  std::vector<RocPoint> env;
  for (const auto& p : pts) {
    if (!env.empty() && env.back().fpr == p.fpr) {
      env.back().tpr = std::max(env.back().tpr, p.tpr);
    } else {
      env.push_back(p);
    }
  }
  if (env.front().fpr > 0.0) env.insert(env.begin(), {0.0, 0.0, 0.0});
  if (env.back().fpr < 1.0) env.push_back({0.0, 1.0, 1.0});
  if (fpr_target <= env.front().fpr) return env.front().tpr;
  for (size_t i = 1; i < env.size(); ++i) {
    if (fpr_target <= env[i].fpr) {
      const double span = env[i].fpr - env[i - 1].fpr;
      const double w = span > 0.0 ? (fpr_target - env[i - 1].fpr) / span : 1.0;
      return env[i - 1].tpr + w * (env[i].tpr - env[i - 1].tpr);
    }
  }
  return env.back().tpr;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

CorrelationMatrix estimate_correlation(ConstMatrixRef data, EstimatorKind kind,
                                       int num_threads) {
  switch (kind) {
    case EstimatorKind::skeptic_rho:
      return skeptic_spearman_matrix(data, num_threads);
    case EstimatorKind::skeptic_tau:
      return skeptic_kendall_matrix(data, num_threads);
    case EstimatorKind::normal_score:
      return normal_score_matrix(data);
    case EstimatorKind::pearson:
      return pearson_matrix(data);
  }
  throw InvalidInputError("estimate_correlation: unknown estimator");
}

const BenchmarkCell* BenchmarkResult::find(TransformKind t, Index n,
                                           SolverKind s,
                                           EstimatorKind e) const {
  for (const auto& cell : cells) {
    if (cell.transform == t && cell.n == n && cell.solver == s &&
        cell.estimator == e) {
      return &cell;
    }
  }
  return nullptr;
}

BenchmarkResult benchmark(const BenchmarkConfig& config) {
  if (config.trials < 1) throw InvalidInputError("benchmark: trials must be >= 1");
  BenchmarkResult result;
  result.config = config;

  // Cells indexed by (transform, n, solver, estimator) in config order.
  for (auto transform : config.transforms) {
    for (auto n : config.n_values) {
      for (auto solver : config.solvers) {
        for (auto estimator : config.estimators) {
          BenchmarkCell cell;
          cell.transform = transform;
          cell.n = n;
          cell.solver = solver;
          cell.estimator = estimator;
          result.cells.push_back(std::move(cell));
        }
      }
    }
  }

  struct TrialOutcome {
    bool ok = false;
    std::string error;
    // per (solver, estimator) in config order
    std::vector<double> fpr, fnr, score;
    std::vector<std::vector<RocPoint>> roc;
  };

  std::uint64_t scenario = 0;
  for (size_t ti = 0; ti < config.transforms.size(); ++ti) {
    for (size_t ni = 0; ni < config.n_values.size(); ++ni, ++scenario) {
      const auto transform = config.transforms[ti];
      const Index n = config.n_values[ni];
      std::vector<TrialOutcome> outcomes(static_cast<size_t>(config.trials));

      parallel_for_each(
          config.trials,
          [&](std::ptrdiff_t trial) {
            TrialOutcome& out = outcomes[static_cast<size_t>(trial)];
            try {
              Rng rng(derive_seed(config.seed,
                                  scenario * 1000003ULL +
                                      static_cast<std::uint64_t>(trial)));
              const Graph graph = generate_graph(
                  config.d, config.sparsity, config.max_degree, rng);
              if (graph.edges.empty()) {
                out.error = "degenerate trial: empty truth graph";
                return;
              }
              const ModelSpec model = build_model(graph, transform);
              const Matrix data = sample_npn(model, n, rng);

              for (auto solver : config.solvers) {
                for (auto estimator : config.estimators) {
                  const CorrelationMatrix s =
                      estimate_correlation(data, estimator, 1);
                  const auto grid = default_grid(s, config.grid_size,
                                                 config.lambda_min_ratio);
                  const RegPath path =
                      solve_path(s, solver, grid, config.solver_cfg,
                                 NeighborhoodRule::AND, 1);
                  const auto oracle = oracle_score(path, graph);
                  out.fpr.push_back(100.0 * oracle.counts.fpr);
                  out.fnr.push_back(100.0 * oracle.counts.fnr);
                  out.score.push_back(100.0 * oracle.score);
                  if (config.collect_roc) {
                    out.roc.push_back(roc_points(path, graph));
                  } else {
                    out.roc.emplace_back();
                  }
                }
              }
              out.ok = true;
            } catch (const std::exception& e) {
              out.ok = false;
              out.error = e.what();
            }
          },
          config.num_threads);

      // Deterministic aggregation in trial order.
      const size_t cell_base =
          (ti * config.n_values.size() + ni) * config.solvers.size() *
          config.estimators.size();
      for (const auto& out : outcomes) {
        size_t k = 0;
        for (size_t si = 0; si < config.solvers.size(); ++si) {
          for (size_t ei = 0; ei < config.estimators.size(); ++ei, ++k) {
            BenchmarkCell& cell = result.cells[cell_base + k];
            if (!out.ok) {
              ++cell.failures;
              continue;
            }
            cell.fpr_pct.push_back(out.fpr[k]);
            cell.fnr_pct.push_back(out.fnr[k]);
            cell.score_pct.push_back(out.score[k]);
            if (config.collect_roc) cell.roc_curves.push_back(out.roc[k]);
          }
        }
      }
    }
  }
  return result;
}

StarsResult stars_select(ConstMatrixRef data, EstimatorKind estimator,
                         SolverKind solver, const std::vector<double>& grid,
                         Index subsample_size, int num_subsamples,
                         double instability_cap, std::uint64_t seed,
                         const SolverConfig& cfg, int num_threads) {
  const Index n = data.rows();
  const Index d = data.cols();
  if (subsample_size >= n || subsample_size < 2) {
    throw InvalidInputError("stars_select: subsample size must be in [2, n)");
  }
  if (num_subsamples < 1 || grid.empty()) {
    throw InvalidInputError("stars_select: need subsamples and a grid");
  }

  const size_t num_lambdas = grid.size();
  const size_t num_pairs = static_cast<size_t>(d * (d - 1) / 2);
  // selection_counts[l][pair index]
  std::vector<std::vector<int>> counts(
      num_lambdas, std::vector<int>(num_pairs, 0));
  std::vector<std::vector<std::vector<int>>> per_subsample(
      static_cast<size_t>(num_subsamples));

  parallel_for_each(
      num_subsamples,
      [&](std::ptrdiff_t b) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        // Partial Fisher-Yates draw of `subsample_size` distinct rows.
        std::vector<Index> rows(static_cast<size_t>(n));
        std::iota(rows.begin(), rows.end(), Index{0});
        for (Index i = 0; i < subsample_size; ++i) {
          const Index j =
              i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
          std::swap(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
        }
        Matrix sub(subsample_size, d);
        for (Index i = 0; i < subsample_size; ++i) {
          sub.row(i) = data.row(rows[static_cast<size_t>(i)]);
        }
        const CorrelationMatrix s = estimate_correlation(sub, estimator, 1);
        const RegPath path =
            solve_path(s, solver, grid, cfg, NeighborhoodRule::AND, 1);
        auto& local = per_subsample[static_cast<size_t>(b)];
        local.assign(num_lambdas, std::vector<int>(num_pairs, 0));
        for (size_t l = 0; l < num_lambdas; ++l) {
          for (const auto& [j, k] : path.estimates[l].edge_set.edges) {
            const size_t pair_index = static_cast<size_t>(
                j * d - j * (j + 1) / 2 + (k - j - 1));
            local[l][pair_index] = 1;
          }
        }
      },
      num_threads);

  for (const auto& local : per_subsample) {
    for (size_t l = 0; l < num_lambdas; ++l) {
      for (size_t p = 0; p < num_pairs; ++p) counts[l][p] += local[l][p];
    }
  }

  StarsResult result;
  result.instability.resize(num_lambdas);
  result.monotone_instability.resize(num_lambdas);
  for (size_t l = 0; l < num_lambdas; ++l) {
    double total = 0.0;
    for (size_t p = 0; p < num_pairs; ++p) {
      const double xi =
          static_cast<double>(counts[l][p]) / static_cast<double>(num_subsamples);
      total += 2.0 * xi * (1.0 - xi);
    }
    result.instability[l] =
        num_pairs > 0 ? total / static_cast<double>(num_pairs) : 0.0;
  }
  double running = 0.0;
  for (size_t l = 0; l < num_lambdas; ++l) {
    running = std::max(running, result.instability[l]);
    result.monotone_instability[l] = running;
  }

  // Walk dense-ward while the monotonized instability stays under the cap.
  Index chosen = -1;
  for (size_t l = 0; l < num_lambdas; ++l) {
    if (result.monotone_instability[l] <= instability_cap) {
      chosen = static_cast<Index>(l);
    } else {
      break;
    }
  }
  if (chosen < 0) {
    result.warning = true;
    chosen = 0;
  }
  result.index = chosen;
  result.lambda = grid[static_cast<size_t>(chosen)];
  return result;
}

ConcentrationReport concentration_check(Index d,
                                        const std::vector<Index>& n_values,
                                        int trials, std::uint64_t seed,
                                        int num_threads) {
  if (d < 2) throw InvalidInputError("concentration_check: d must be >= 2");
  for (Index n : n_values) {
    if (n < 2) throw InvalidInputError("concentration_check: n must be >= 2");
  }
  Rng model_rng(derive_seed(seed, 0));
  const Graph graph =
      generate_graph(d, kDefaultSparsity, kDefaultMaxDegree, model_rng);
  const ModelSpec model = build_model(graph, TransformKind::linear);
  const double log_d = std::log(static_cast<double>(d));

  ConcentrationReport report;
  report.d = d;
  report.trials = trials;

  for (size_t ni = 0; ni < n_values.size(); ++ni) {
    const Index n = n_values[ni];
    ConcentrationCell rho_cell, tau_cell;
    rho_cell.n = tau_cell.n = n;
    const double rate = std::sqrt(log_d / static_cast<double>(n));
    rho_cell.bound = 8.0 * kPi * rate;
    tau_cell.bound = 2.45 * kPi * rate;
    rho_cell.sup_devs.resize(static_cast<size_t>(trials));
    tau_cell.sup_devs.resize(static_cast<size_t>(trials));

    parallel_for_each(
        trials,
        [&](std::ptrdiff_t trial) {
          Rng rng(derive_seed(seed, 1 + ni * 1000003ULL +
                                        static_cast<std::uint64_t>(trial)));
          const Matrix data = sample_npn(model, n, rng);
          const auto s_rho = skeptic_spearman_matrix(data, 1);
          const auto s_tau = skeptic_kendall_matrix(data, 1);
          rho_cell.sup_devs[static_cast<size_t>(trial)] =
              (s_rho.entries - model.sigma0).cwiseAbs().maxCoeff();
          tau_cell.sup_devs[static_cast<size_t>(trial)] =
              (s_tau.entries - model.sigma0).cwiseAbs().maxCoeff();
        },
        num_threads);

    const double inv_rate = 1.0 / rate;
    for (int t = 0; t < trials; ++t) {
      const double rd = rho_cell.sup_devs[static_cast<size_t>(t)];
      const double td = tau_cell.sup_devs[static_cast<size_t>(t)];
      rho_cell.rate_stats.push_back(rd * inv_rate);
      tau_cell.rate_stats.push_back(td * inv_rate);
      if (rd > rho_cell.bound) ++rho_cell.violations;
      if (td > tau_cell.bound) ++tau_cell.violations;
    }
    rho_cell.median_rate = median_of(rho_cell.rate_stats);
    tau_cell.median_rate = median_of(tau_cell.rate_stats);
    report.rho_cells.push_back(std::move(rho_cell));
    report.tau_cells.push_back(std::move(tau_cell));
  }
  return report;
}

}  // namespace skeptic
