#pragma once

#include "skeptic/types.hpp"

namespace skeptic {

// Dense two-phase simplex for  min c^T x  s.t.  A x <= b,  x >= 0.
// The returned primal/dual pair is recomputed from the final basis by LU
// factorization, and the duality gap certifies optimality.
struct LpResult {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };
  Status status = Status::optimal;
  Vector x;
  Vector dual;       // y <= 0 with A^T y <= c
  double objective = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
};

LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c,
                  int max_iterations = 100000);

// min ||theta||_1  s.t.  ||r - M theta||_inf <= delta, theta free,
// via the positive-part splitting theta = u - v.
struct L1InfResult {
  bool feasible = true;
  Vector theta;
  double objective = 0.0;     // ||theta||_1 at the solution
  double duality_gap = 0.0;
  int iterations = 0;
  double min_feasible_delta = 0.0;  // set when infeasible
};

L1InfResult solve_l1_inf(const Matrix& M, const Vector& r, double delta,
                         int max_iterations = 100000);

// min_theta ||r - M theta||_inf  (Chebyshev residual; always feasible).
double min_inf_residual(const Matrix& M, const Vector& r);

}  // namespace skeptic
