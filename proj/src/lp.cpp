#include "skeptic/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace skeptic {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostTol = 1e-11;

}  // namespace

LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c,
                  int max_iterations) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) {
    throw InvalidInputError("solve_lp: dimension mismatch");
  }

  // Flip rows with negative rhs so the slack basis is sign-feasible; flipped
  // rows get an artificial column instead.
  Vector sign = Vector::Ones(m);
  std::vector<Index> artificial_rows;
  for (Index i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      sign[i] = -1.0;
      artificial_rows.push_back(i);
    }
  }
  const Index n_art = static_cast<Index>(artificial_rows.size());
  const Index n_slack = m;
  const Index total = n + n_slack + n_art;

  // T holds [scaled A | scaled I | artificials | rhs]; row m is the cost row.
  Matrix T = Matrix::Zero(m + 1, total + 1);
  for (Index i = 0; i < m; ++i) {
    T.row(i).head(n) = sign[i] * A.row(i);
    T(i, n + i) = sign[i];
    T(i, total) = sign[i] * b[i];
  }
  for (Index k = 0; k < n_art; ++k) {
    T(artificial_rows[static_cast<size_t>(k)], n + n_slack + k) = 1.0;
  }

  std::vector<Index> basis(static_cast<size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;
  for (Index k = 0; k < n_art; ++k) {
    basis[static_cast<size_t>(artificial_rows[static_cast<size_t>(k)])] =
        n + n_slack + k;
  }

  LpResult result;
  int iterations = 0;

  auto rebuild_cost_row = [&](const Vector& costs) {
    T.row(m).head(total) = costs.transpose();
    T(m, total) = 0.0;
    for (Index i = 0; i < m; ++i) {
      const double cb = costs[basis[static_cast<size_t>(i)]];
      if (cb != 0.0) T.row(m) -= cb * T.row(i);
    }
  };

  auto pivot = [&](Index row, Index col) {
    T.row(row) /= T(row, col);
    for (Index i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double factor = T(i, col);
      if (factor != 0.0) T.row(i) -= factor * T.row(row);
    }
    basis[static_cast<size_t>(row)] = col;
  };

  // allow_enter filters the pricing candidates (artificials stay out in
  // phase 2). Returns false on iteration-limit or unboundedness.
  auto optimize = [&](Index allowed_cols, int bland_after) -> LpResult::Status {
    while (true) {
      if (iterations >= max_iterations) return LpResult::Status::iteration_limit;
      const bool bland = iterations >= bland_after;
      Index enter = -1;
      double best = -kCostTol;
      for (Index j = 0; j < allowed_cols; ++j) {
        const double rc = T(m, j);
        if (rc < best) {
          enter = j;
          best = rc;
          if (bland) break;  // Bland: first improving column
        }
      }
      if (enter < 0) return LpResult::Status::optimal;

      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        const double aij = T(i, enter);
        if (aij > kPivotEps) {
          const double ratio = T(i, total) / aij;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave >= 0 &&
               basis[static_cast<size_t>(i)] <
                   basis[static_cast<size_t>(leave)])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return LpResult::Status::unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  };

  const int bland_after = std::max(2000, static_cast<int>(16 * (m + total)));

  // Phase 1: drive the artificial variables to zero.
  if (n_art > 0) {
    Vector phase1_costs = Vector::Zero(total);
    phase1_costs.tail(n_art).setOnes();
    rebuild_cost_row(phase1_costs);
    const auto status = optimize(total, bland_after);
    if (status != LpResult::Status::optimal) {
      result.status = status == LpResult::Status::unbounded
                          ? LpResult::Status::infeasible
                          : status;
      result.iterations = iterations;
      return result;
    }
    if (-T(m, total) > 1e-8) {  // leftover infeasibility
      result.status = LpResult::Status::infeasible;
      result.iterations = iterations;
      return result;
    }
  }

  // Phase 2: original objective; artificial columns may stay basic at zero
  // but never re-enter.
  Vector phase2_costs = Vector::Zero(total);
  phase2_costs.head(n) = c;
  rebuild_cost_row(phase2_costs);
  const auto status = optimize(n + n_slack, bland_after);
  result.iterations = iterations;
  if (status != LpResult::Status::optimal) {
    result.status = status;
    return result;
  }

  // Recompute primal and dual from the final basis by LU; the tableau only
  // supplies the basis, so accumulated pivot round-off drops out.
  Matrix B(m, m);
  Vector cb(m);
  for (Index i = 0; i < m; ++i) {
    const Index col = basis[static_cast<size_t>(i)];
    if (col < n) {
      B.col(i) = sign.asDiagonal() * A.col(col);
      cb[i] = c[col];
    } else if (col < n + n_slack) {
      B.col(i) = Vector::Unit(m, col - n) * sign[col - n];
      cb[i] = 0.0;
    } else {
      const Index row = artificial_rows[static_cast<size_t>(col - n - n_slack)];
      B.col(i) = Vector::Unit(m, row);
      cb[i] = 0.0;
    }
  }
  Eigen::PartialPivLU<Matrix> lu(B);
  const Vector scaled_b = sign.asDiagonal() * b;
  const Vector xb = lu.solve(scaled_b);
  const Vector y_scaled = lu.transpose().solve(cb);

  result.x = Vector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index col = basis[static_cast<size_t>(i)];
    if (col < n) result.x[col] = xb[i];
  }
  result.dual = sign.asDiagonal() * y_scaled;
  result.objective = c.dot(result.x);
  result.duality_gap = std::abs(result.objective - b.dot(result.dual));
  result.status = LpResult::Status::optimal;
  return result;
}

L1InfResult solve_l1_inf(const Matrix& M, const Vector& r, double delta,
                         int max_iterations) {
  const Index m = M.rows();
  const Index p = M.cols();
  if (r.size() != m) throw InvalidInputError("solve_l1_inf: dimension mismatch");
  if (delta <= 0.0) throw InvalidInputError("solve_l1_inf: delta must be > 0");

  Matrix A(2 * m, 2 * p);
  A.topLeftCorner(m, p) = M;
  A.topRightCorner(m, p) = -M;
  A.bottomLeftCorner(m, p) = -M;
  A.bottomRightCorner(m, p) = M;
  Vector b(2 * m);
  b.head(m) = r.array() + delta;
  b.tail(m) = delta - r.array();
  const Vector c = Vector::Ones(2 * p);

  const LpResult lp = solve_lp(A, b, c, max_iterations);
  L1InfResult out;
  out.iterations = lp.iterations;
  if (lp.status == LpResult::Status::infeasible) {
    out.feasible = false;
    out.min_feasible_delta = min_inf_residual(M, r);
    return out;
  }
  if (lp.status != LpResult::Status::optimal) {
    throw ConvergenceError("solve_l1_inf: simplex did not terminate", Matrix(),
                           lp.iterations, 0.0);
  }
  out.theta = lp.x.head(p) - lp.x.tail(p);
  out.objective = lp.objective;
  out.duality_gap = lp.duality_gap;
  return out;
}

double min_inf_residual(const Matrix& M, const Vector& r) {
  const Index m = M.rows();
  const Index p = M.cols();
  // Variables [u; v; t]: minimize t with M(u-v) - t <= r, -M(u-v) - t <= -r.
  Matrix A(2 * m, 2 * p + 1);
  A.topLeftCorner(m, p) = M;
  A.block(0, p, m, p) = -M;
  A.bottomLeftCorner(m, p) = -M;
  A.block(m, p, m, p) = M;
  A.col(2 * p).setConstant(-1.0);
  Vector b(2 * m);
  b.head(m) = r;
  b.tail(m) = -r;
  Vector c = Vector::Zero(2 * p + 1);
  c[2 * p] = 1.0;
  const LpResult lp = solve_lp(A, b, c);
  if (lp.status != LpResult::Status::optimal) {
    throw ConvergenceError("min_inf_residual: simplex did not terminate",
                           Matrix(), lp.iterations, 0.0);
  }
  return lp.objective;
}

}  // namespace skeptic
