#pragma once

#include "skeptic/types.hpp"

namespace skeptic {

// Rank-bridge correlation estimates. Data is n x d, rows are observations.
// Off-diagonal entries are 2 sin(pi/6 rho_jk); diagonal is exactly 1.
CorrelationMatrix skeptic_spearman_matrix(ConstMatrixRef data,
                                          int num_threads = 0);

// Off-diagonal entries are sin(pi/2 tau_jk); diagonal is exactly 1.
CorrelationMatrix skeptic_kendall_matrix(ConstMatrixRef data,
                                         int num_threads = 0);

// Correlation of winsorized normal scores: each column is pushed through
// Phi^{-1} of its scaled empirical CDF truncated to [delta_n, 1 - delta_n],
// then entries are uncentered normalized inner products of the scores.
CorrelationMatrix normal_score_matrix(ConstMatrixRef data);

// Plain sample correlation; the parametric baseline.
CorrelationMatrix pearson_matrix(ConstMatrixRef data);

// Clips eigenvalues from below at `floor`, rescales to unit diagonal, and
// repeats until the smallest eigenvalue clears the floor. Inputs already
// above the floor are returned unchanged (flag set), making this idempotent.
CorrelationMatrix psd_repair(const CorrelationMatrix& s, double floor = 1e-4);

double min_eigenvalue(const Matrix& symmetric);

}  // namespace skeptic
