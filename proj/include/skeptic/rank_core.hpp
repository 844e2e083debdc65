#pragma once

#include <vector>

#include "skeptic/types.hpp"

namespace skeptic {

// Midranks of a column: tied values share the average of the positions they
// occupy, so the rank sum is always n(n+1)/2. Rejects non-finite input.
std::vector<double> compute_ranks(ConstVectorRef column);

// Rank correlation: Pearson correlation of the two midrank vectors. On
// tie-free data this coincides with 1 - 6 sum d_i^2 / (n(n^2-1)).
// Throws UndefinedCorrelationError when a column is constant.
PairStat spearman_rho(ConstVectorRef x, ConstVectorRef y);

// Concordant-minus-discordant pair count over n(n-1)/2; pairs tied in either
// coordinate contribute zero. Computed in O(n log n) by merge-sort inversion
// counting and exactly equal to the pair-enumeration definition.
PairStat kendall_tau(ConstVectorRef x, ConstVectorRef y);

namespace detail {

// Order of indices sorting `column` ascending (stable under exact ties).
std::vector<Index> sort_order(ConstVectorRef column);

// Kendall statistic for y permuted into x's sort order; `order` and the
// half-open runs of tied x values must come from the same column.
double kendall_from_order(ConstVectorRef y, const std::vector<Index>& order,
                          const std::vector<std::pair<Index, Index>>& x_runs);

std::vector<std::pair<Index, Index>> tie_runs(ConstVectorRef column,
                                              const std::vector<Index>& order);

}  // namespace detail

}  // namespace skeptic
