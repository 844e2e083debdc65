#include "skeptic/graph_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <vector>

#include "skeptic/corr_estimators.hpp"
#include "skeptic/lp.hpp"
#include "skeptic/parallel.hpp"

namespace skeptic {

namespace {

constexpr double kLpGapTol = 1e-8;

// Position of column k inside the minor that drops row/column j.
inline Index minor_index(Index k, Index j) { return k < j ? k : k - 1; }

Matrix drop_row_col(const Matrix& m, Index j) {
  const Index d = m.rows();
  Matrix out(d - 1, d - 1);
  for (Index c = 0; c < d; ++c) {
    if (c == j) continue;
    for (Index r = 0; r < d; ++r) {
      if (r == j) continue;
      out(minor_index(r, j), minor_index(c, j)) = m(r, c);
    }
  }
  return out;
}

Vector drop_entry(const Matrix& m, Index col, Index j) {
  const Index d = m.rows();
  Vector out(d - 1);
  for (Index r = 0; r < d; ++r) {
    if (r == j) continue;
    out[minor_index(r, j)] = m(r, col);
  }
  return out;
}

// Runs fn(j) over columns, preserving the first thrown error by column order.
void for_each_column(Index d, const std::function<void(Index)>& fn,
                     int num_threads) {
  std::vector<std::exception_ptr> errors(static_cast<size_t>(d));
  parallel_for_each(
      d,
      [&](std::ptrdiff_t j) {
        try {
          fn(static_cast<Index>(j));
        } catch (...) {
          errors[static_cast<size_t>(j)] = std::current_exception();
        }
      },
      num_threads);
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_square_correlation(const CorrelationMatrix& s) {
  if (s.entries.rows() != s.entries.cols() || s.entries.rows() < 1) {
    throw InvalidInputError("correlation matrix must be square and non-empty");
  }
}

}  // namespace

PrecisionEstimate glasso(const CorrelationMatrix& s, double lambda,
                         const SolverConfig& cfg, GlassoWarmState* warm) {
  require_square_correlation(s);
  if (lambda < 0.0) throw InvalidInputError("glasso: lambda must be >= 0");
  const Index d = s.dim();
  const Matrix& S = s.entries;
  if (!s.psd_repaired && min_eigenvalue(S) < cfg.psd_floor) {
    throw NotPositiveDefiniteError(
        "glasso: input must be PSD-repaired (min eigenvalue below floor)");
  }

  PrecisionEstimate est;
  est.lambda = lambda;
  est.solver = SolverKind::glasso;

  if (d == 1) {
    est.omega = Matrix::Constant(1, 1, 1.0 / S(0, 0));
    est.edge_set = edges_from_omega(est.omega, cfg.edge_threshold);
    return est;
  }

  Matrix W;
  Matrix B;  // column j: regression coefficients, entry j kept at zero
  if (warm && warm->w.rows() == d) {
    W = warm->w;
    B = warm->beta;
  } else {
    W = S;
    B = Matrix::Zero(d, d);
  }

  SolverConfig inner = cfg;
  inner.convergence_tol = 0.1 * cfg.convergence_tol;

  int total_inner = 0;
  double change = 0.0;
  bool converged = false;
  int sweeps = 0;
  for (; sweeps < cfg.max_sweeps; ++sweeps) {
    change = 0.0;
    for (Index j = 0; j < d; ++j) {
      const Matrix w11 = drop_row_col(W, j);
      const Vector s12 = drop_entry(S, j, j);
      Vector beta_warm = drop_entry(B, j, j);
      int inner_iters = 0;
      Vector beta;
      try {
        beta = solve_lasso_gram(w11, s12, lambda, inner, &beta_warm,
                                &inner_iters);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError(
            "glasso: inner lasso for column " + std::to_string(j) +
                " did not converge",
            W, e.iterations(), e.residual());
      }
      total_inner += inner_iters;
      const Vector w12 = w11 * beta;
      for (Index k = 0; k < d; ++k) {
        if (k == j) continue;
        const double next = w12[minor_index(k, j)];
        change = std::max(change, std::abs(next - W(k, j)));
        W(k, j) = next;
        W(j, k) = next;
        B(k, j) = beta[minor_index(k, j)];
      }
    }
    if (change <= cfg.convergence_tol) {
      converged = true;
      ++sweeps;
      break;
    }
  }

  // Recover the precision matrix from the final regressions.
  Matrix omega(d, d);
  for (Index j = 0; j < d; ++j) {
    const Vector beta = drop_entry(B, j, j);
    const Vector w12 = drop_entry(W, j, j);
    const double denom = S(j, j) - w12.dot(beta);
    if (denom <= 0.0) {
      throw SingularityError("glasso: nonpositive residual variance at column " +
                             std::to_string(j));
    }
    omega(j, j) = 1.0 / denom;
    for (Index k = 0; k < d; ++k) {
      if (k == j) continue;
      omega(k, j) = -beta[minor_index(k, j)] / denom;
    }
  }
  omega = (0.5 * (omega + omega.transpose())).eval();

  if (!converged) {
    throw ConvergenceError("glasso: no convergence in " +
                               std::to_string(cfg.max_sweeps) + " sweeps",
                           omega, sweeps, change);
  }

  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("glasso: result lost positive definiteness");
  }

  if (warm) {
    warm->w = W;
    warm->beta = B;
  }

  est.omega = std::move(omega);
  est.edge_set = edges_from_omega(est.omega, cfg.edge_threshold);
  est.diagnostics.iterations = total_inner;
  est.diagnostics.converged = true;
  est.diagnostics.final_residual =
      glasso_kkt_residual(S, est.omega, lambda, cfg.edge_threshold);
  return est;
}

double glasso_kkt_residual(const Matrix& s, const Matrix& omega, double lambda,
                           double zero_threshold) {
  const Index d = s.rows();
  Eigen::LLT<Matrix> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("glasso_kkt_residual: omega not PD");
  }
  const Matrix w = llt.solve(Matrix::Identity(d, d));
  double worst = 0.0;
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      const double grad = s(j, k) - w(j, k);
      double v;
      if (j == k) {
        v = std::abs(grad);
      } else if (std::abs(omega(j, k)) <= zero_threshold) {
        v = std::max(0.0, std::abs(grad) - lambda);
      } else {
        v = std::abs(grad + lambda * (omega(j, k) > 0 ? 1.0 : -1.0));
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

PrecisionEstimate clime(const CorrelationMatrix& s, double delta_cap,
                        const SolverConfig& cfg, int num_threads) {
  require_square_correlation(s);
  if (delta_cap <= 0.0) {
    throw InvalidInputError("clime: delta_cap must be > 0");
  }
  const Index d = s.dim();
  const Matrix& S = s.entries;

  Matrix raw(d, d);
  std::vector<double> residuals(static_cast<size_t>(d), 0.0);
  std::vector<int> pivots(static_cast<size_t>(d), 0);

  for_each_column(
      d,
      [&](Index j) {
        const Vector ej = Vector::Unit(d, j);
        const auto res = solve_l1_inf(S, ej, delta_cap, cfg.max_iterations);
        if (!res.feasible) {
          throw InfeasibleError(
              "clime: column " + std::to_string(j) +
                  " infeasible at delta=" + std::to_string(delta_cap) +
                  "; minimal feasible delta is " +
                  std::to_string(res.min_feasible_delta),
              j, res.min_feasible_delta);
        }
        if (res.duality_gap > kLpGapTol) {
          throw ConvergenceError("clime: LP certificate failed for column " +
                                     std::to_string(j),
                                 Matrix(), res.iterations, res.duality_gap);
        }
        raw.col(j) = res.theta;
        residuals[static_cast<size_t>(j)] =
            (S * res.theta - ej).cwiseAbs().maxCoeff();
        pivots[static_cast<size_t>(j)] = res.iterations;
      },
      num_threads);

  // Keep the smaller-magnitude member of each (j,k)/(k,j) pair.
  Matrix omega(d, d);
  for (Index j = 0; j < d; ++j) {
    omega(j, j) = raw(j, j);
    for (Index k = j + 1; k < d; ++k) {
      const double a = raw(j, k);
      const double b = raw(k, j);
      const double kept = std::abs(a) <= std::abs(b) ? a : b;
      omega(j, k) = kept;
      omega(k, j) = kept;
    }
  }

  PrecisionEstimate est;
  est.omega = std::move(omega);
  est.lambda = delta_cap;
  est.solver = SolverKind::clime;
  est.edge_set = edges_from_omega(est.omega, cfg.edge_threshold);
  est.diagnostics.iterations = 0;
  for (int p : pivots) est.diagnostics.iterations += p;
  est.diagnostics.final_residual =
      *std::max_element(residuals.begin(), residuals.end());
  return est;
}

PrecisionEstimate graphical_dantzig(const CorrelationMatrix& s, double delta,
                                    const SolverConfig& cfg, int num_threads) {
  require_square_correlation(s);
  if (delta <= 0.0) {
    throw InvalidInputError("graphical_dantzig: delta must be > 0");
  }
  const Index d = s.dim();
  const Matrix& S = s.entries;

  PrecisionEstimate est;
  est.lambda = delta;
  est.solver = SolverKind::gdantzig;

  if (d == 1) {
    est.omega = Matrix::Constant(1, 1, 1.0);
    est.edge_set.d = 1;
    return est;
  }

  Matrix raw = Matrix::Zero(d, d);
  std::vector<int> pivots(static_cast<size_t>(d), 0);
  std::vector<double> gaps(static_cast<size_t>(d), 0.0);

  for_each_column(
      d,
      [&](Index j) {
        const Matrix a = drop_row_col(S, j);
        const Vector b = drop_entry(S, j, j);
        const auto res = solve_l1_inf(a, b, delta, cfg.max_iterations);
        if (!res.feasible) {
          throw InfeasibleError(
              "graphical_dantzig: column " + std::to_string(j) +
                  " infeasible; minimal feasible delta is " +
                  std::to_string(res.min_feasible_delta),
              j, res.min_feasible_delta);
        }
        if (res.duality_gap > kLpGapTol) {
          throw ConvergenceError(
              "graphical_dantzig: LP certificate failed for column " +
                  std::to_string(j),
              Matrix(), res.iterations, res.duality_gap);
        }
        const Vector& theta = res.theta;
        const double denom =
            1.0 - 2.0 * theta.dot(b) + theta.dot(a * theta);
        if (denom < 1e-10) {
          throw SingularityError(
              "graphical_dantzig: residual variance vanished at column " +
              std::to_string(j));
        }
        raw(j, j) = 1.0 / denom;
        for (Index k = 0; k < d; ++k) {
          if (k == j) continue;
          raw(k, j) = -theta[minor_index(k, j)] / denom;
        }
        pivots[static_cast<size_t>(j)] = res.iterations;
        gaps[static_cast<size_t>(j)] = res.duality_gap;
      },
      num_threads);

  est.omega = 0.5 * (raw + raw.transpose());
  est.edge_set = edges_from_omega(est.omega, cfg.edge_threshold);
  for (int p : pivots) est.diagnostics.iterations += p;
  est.diagnostics.final_residual = *std::max_element(gaps.begin(), gaps.end());
  return est;
}

PrecisionEstimate neighborhood_lasso(const CorrelationMatrix& s, double lambda,
                                     NeighborhoodRule rule,
                                     const SolverConfig& cfg, int num_threads) {
  require_square_correlation(s);
  if (lambda < 0.0) {
    throw InvalidInputError("neighborhood_lasso: lambda must be >= 0");
  }
  const Index d = s.dim();
  const Matrix& S = s.entries;

  PrecisionEstimate est;
  est.lambda = lambda;
  est.solver = SolverKind::neighborhood_lasso;

  if (d == 1) {
    est.omega = Matrix::Constant(1, 1, 1.0);
    est.edge_set.d = 1;
    return est;
  }

  // coef(k, j): coefficient of variable k in the regression of j on the rest.
  Matrix coef = Matrix::Zero(d, d);
  std::vector<int> iters(static_cast<size_t>(d), 0);
  for_each_column(
      d,
      [&](Index j) {
        const Matrix g = drop_row_col(S, j);
        const Vector c = drop_entry(S, j, j);
        int it = 0;
        const Vector theta = solve_lasso_gram(g, c, lambda, cfg, nullptr, &it);
        for (Index k = 0; k < d; ++k) {
          if (k != j) coef(k, j) = theta[minor_index(k, j)];
        }
        iters[static_cast<size_t>(j)] = it;
      },
      num_threads);

  // AND keeps the smaller-magnitude coefficient of the two regressions, OR
  // the larger, so thresholding the omega entries reproduces the rule.
  Matrix omega = Matrix::Identity(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index k = j + 1; k < d; ++k) {
      const double a = coef(k, j);
      const double b = coef(j, k);
      double pick;
      if (rule == NeighborhoodRule::AND) {
        pick = std::abs(a) <= std::abs(b) ? a : b;
      } else {
        pick = std::abs(a) >= std::abs(b) ? a : b;
      }
      omega(j, k) = -pick;
      omega(k, j) = -pick;
    }
  }

  est.omega = std::move(omega);
  est.edge_set = edges_from_omega(est.omega, cfg.edge_threshold);
  for (int it : iters) est.diagnostics.iterations += it;
  est.diagnostics.final_residual = 0.0;
  return est;
}

Vector solve_dantzig_lp(const Matrix& A, const Vector& b, double delta,
                        double* objective_out) {
  if (delta <= 0.0) {
    throw InvalidInputError("solve_dantzig_lp: delta must be > 0");
  }
  const auto res = solve_l1_inf(A, b, delta);
  if (!res.feasible) {
    throw InfeasibleError("solve_dantzig_lp: infeasible; minimal feasible "
                          "delta is " +
                              std::to_string(res.min_feasible_delta),
                          -1, res.min_feasible_delta);
  }
  if (res.duality_gap > kLpGapTol) {
    throw ConvergenceError("solve_dantzig_lp: duality gap certificate failed",
                           Matrix(), res.iterations, res.duality_gap);
  }
  if (objective_out) *objective_out = res.objective;
  return res.theta;
}

}  // namespace skeptic
