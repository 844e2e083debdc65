// Reference LP solver for the test suites: single-phase Big-M tableau with
// Bland's rule throughout. Independent of the production two-phase simplex
// in both formulation and pivoting.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "skeptic/types.hpp"

namespace oracle {

struct LpSolution {
  bool feasible = false;
  bool bounded = true;
  skeptic::Vector x;
  double objective = 0.0;
};

// min c'x  s.t.  A x <= b, x >= 0.
inline LpSolution solve_lp_bigm(const skeptic::Matrix& A,
                                const skeptic::Vector& b,
                                const skeptic::Vector& c,
                                int max_pivots = 2000000) {
  using skeptic::Index;
  using skeptic::Matrix;
  using skeptic::Vector;

  const Index m = A.rows();
  const Index n = A.cols();
  double scale = 1.0;
  for (Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(c[j]));
  const double big_m = 1e7 * scale;

  std::vector<Index> art_rows;
  for (Index i = 0; i < m; ++i) {
    if (b[i] < 0.0) art_rows.push_back(i);
  }
  const Index n_art = static_cast<Index>(art_rows.size());
  const Index total = n + m + n_art;

  Matrix t = Matrix::Zero(m + 1, total + 1);
  std::vector<Index> basis(static_cast<size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const double sg = b[i] < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sg * A.row(i);
    t(i, n + i) = sg;
    t(i, total) = sg * b[i];
    basis[static_cast<size_t>(i)] = n + i;
  }
  for (Index k = 0; k < n_art; ++k) {
    const Index row = art_rows[static_cast<size_t>(k)];
    t(row, n + m + k) = 1.0;
    basis[static_cast<size_t>(row)] = n + m + k;
  }

  // Cost row: original costs plus big-M on artificials, reduced by the
  // starting basis.
  for (Index j = 0; j < n; ++j) t(m, j) = c[j];
  for (Index k = 0; k < n_art; ++k) t(m, n + m + k) = big_m;
  for (Index i = 0; i < m; ++i) {
    const Index bi = basis[static_cast<size_t>(i)];
    const double cost = bi < n ? c[bi] : (bi < n + m ? 0.0 : big_m);
    if (cost != 0.0) t.row(m) -= cost * t.row(i);
  }

  LpSolution sol;
  for (int pivots = 0; pivots < max_pivots; ++pivots) {
    Index enter = -1;
    for (Index j = 0; j < total; ++j) {  // Bland: smallest index
      if (t(m, j) < -1e-9) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) > 1e-11) {
        const double ratio = t(i, total) / t(i, enter);
        if (ratio < best - 1e-12 ||
            (std::abs(ratio - best) <= 1e-12 && leave >= 0 &&
             basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      sol.bounded = false;
      return sol;
    }
    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[static_cast<size_t>(leave)] = enter;
  }

  // Any artificial left at a positive level means the LP is infeasible.
  for (Index i = 0; i < m; ++i) {
    if (basis[static_cast<size_t>(i)] >= n + m && t(i, total) > 1e-7) {
      return sol;
    }
  }
  sol.feasible = true;
  sol.x = Vector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    if (basis[static_cast<size_t>(i)] < n) {
      sol.x[basis[static_cast<size_t>(i)]] = t(i, total);
    }
  }
  sol.objective = c.dot(sol.x);
  return sol;
}

// min ||theta||_1 s.t. ||b - M theta||_inf <= delta, via the splitting LP.
inline LpSolution solve_l1_inf_bigm(const skeptic::Matrix& M,
                                    const skeptic::Vector& b, double delta) {
  using skeptic::Index;
  using skeptic::Matrix;
  using skeptic::Vector;
  const Index m = M.rows();
  const Index p = M.cols();
  Matrix A(2 * m, 2 * p);
  A.topLeftCorner(m, p) = M;
  A.topRightCorner(m, p) = -M;
  A.bottomLeftCorner(m, p) = -M;
  A.bottomRightCorner(m, p) = M;
  Vector rhs(2 * m);
  rhs.head(m) = b.array() + delta;
  rhs.tail(m) = delta - b.array();
  LpSolution sol = solve_lp_bigm(A, rhs, Vector::Ones(2 * p));
  if (sol.feasible) {
    Vector theta = sol.x.head(p) - sol.x.tail(p);
    sol.x = theta;
  }
  return sol;
}

}  // namespace oracle
