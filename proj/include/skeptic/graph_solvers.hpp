#pragma once

#include <optional>

#include "skeptic/types.hpp"

namespace skeptic {

// Coordinate descent for  min 1/2 th' G th - c' th + lambda ||th||_1
// on a symmetric Gram matrix with positive diagonal. `warm` seeds the
// iterate. KKT holds to cfg.convergence_tol at the solution.
Vector solve_lasso_gram(const Matrix& G, const Vector& c, double lambda,
                        const SolverConfig& cfg = {},
                        const Vector* warm = nullptr,
                        int* iterations_out = nullptr);

// Penalized likelihood  tr(S Om) - log|Om| + lambda sum_{j!=k} |Om_jk|
// by blockwise coordinate descent on the covariance iterate. S must have
// been PSD-repaired (min eigenvalue >= cfg.psd_floor). Output is positive
// definite. `warm` carries (W, B) from a previous lambda for path reuse.
struct GlassoWarmState {
  Matrix w;
  Matrix beta;  // d x d, column j holds the regression coefs (j-th entry 0)
};

PrecisionEstimate glasso(const CorrelationMatrix& s, double lambda,
                         const SolverConfig& cfg = {},
                         GlassoWarmState* warm = nullptr);

// Columnwise  min ||w||_1 s.t. ||S w - e_j||_inf <= delta_cap, assembled and
// symmetrized by keeping the smaller-magnitude entry of each (j,k) pair.
PrecisionEstimate clime(const CorrelationMatrix& s, double delta_cap,
                        const SolverConfig& cfg = {}, int num_threads = 0);

// Per-column Dantzig-selector regressions: th^j minimizes ||th||_1 under
// ||S_{\j,j} - S_{\j,\j} th||_inf <= delta; the precision diagonal is the
// reciprocal residual variance and the result is symmetrized by averaging.
PrecisionEstimate graphical_dantzig(const CorrelationMatrix& s, double delta,
                                    const SolverConfig& cfg = {},
                                    int num_threads = 0);

// Per-node lasso regressions on the Gram form; edges combined by the AND/OR
// neighborhood rule. Off-diagonal magnitudes come from the regression
// coefficients, so only the sign pattern is meaningful.
PrecisionEstimate neighborhood_lasso(const CorrelationMatrix& s, double lambda,
                                     NeighborhoodRule rule,
                                     const SolverConfig& cfg = {},
                                     int num_threads = 0);

// min ||theta||_1 s.t. ||b - A theta||_inf <= delta, optimality certified by
// LP duality gap <= 1e-8.
Vector solve_dantzig_lp(const Matrix& A, const Vector& b, double delta,
                        double* objective_out = nullptr);

// Max KKT violation of the glasso stationarity conditions at omega,
// recomputing omega^{-1} from scratch.
double glasso_kkt_residual(const Matrix& s, const Matrix& omega, double lambda,
                           double zero_threshold = 1e-6);

}  // namespace skeptic
