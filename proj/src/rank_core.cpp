#include "skeptic/rank_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace skeptic {

namespace {

void require_finite(ConstVectorRef v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidInputError(std::string(what) + ": non-finite value at index " +
                              std::to_string(i));
    }
  }
}

void require_same_length(ConstVectorRef x, ConstVectorRef y) {
  if (x.size() != y.size()) {
    throw InvalidInputError("paired columns differ in length");
  }
  if (x.size() < 2) {
    throw InvalidInputError("pair statistics need at least two observations");
  }
}

bool is_constant(ConstVectorRef v) {
  for (Index i = 1; i < v.size(); ++i) {
    if (v[i] != v[0]) return false;
  }
  return true;
}

// Strict inversions (left > right) counted while merge sorting `a` in place.
long long merge_count(std::vector<double>& a, std::vector<double>& buf,
                      Index lo, Index hi) {
  if (hi - lo < 2) return 0;
  const Index mid = lo + (hi - lo) / 2;
  long long count = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
  Index i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      count += mid - i;
      buf[k++] = a[j++];
    } else {
      buf[k++] = a[i++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
  return count;
}

long long tied_pairs_sorted(const std::vector<double>& sorted_vals) {
  long long total = 0;
  const Index n = static_cast<Index>(sorted_vals.size());
  Index i = 0;
  while (i < n) {
    Index j = i + 1;
    while (j < n && sorted_vals[j] == sorted_vals[i]) ++j;
    const long long t = j - i;
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace

namespace detail {

std::vector<Index> sort_order(ConstVectorRef column) {
  std::vector<Index> order(column.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&column](Index a, Index b) { return column[a] < column[b]; });
  return order;
}

std::vector<std::pair<Index, Index>> tie_runs(ConstVectorRef column,
                                              const std::vector<Index>& order) {
  std::vector<std::pair<Index, Index>> runs;
  const Index n = static_cast<Index>(order.size());
  Index i = 0;
  while (i < n) {
    Index j = i + 1;
    while (j < n && column[order[j]] == column[order[i]]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

double kendall_from_order(ConstVectorRef y, const std::vector<Index>& order,
                          const std::vector<std::pair<Index, Index>>& x_runs) {
  const Index n = static_cast<Index>(order.size());
  std::vector<double> ys(n);
  for (Index i = 0; i < n; ++i) ys[i] = y[order[i]];

  // Pairs tied in x, and within them pairs tied in both coordinates.
  long long tied_x = 0;
  long long tied_both = 0;
  for (const auto& [lo, hi] : x_runs) {
    const long long len = hi - lo;
    if (len < 2) continue;
    tied_x += len * (len - 1) / 2;
    std::sort(ys.begin() + lo, ys.begin() + hi);
    Index i = lo;
    while (i < hi) {
      Index j = i + 1;
      while (j < hi && ys[j] == ys[i]) ++j;
      const long long t = j - i;
      tied_both += t * (t - 1) / 2;
      i = j;
    }
  }

  std::vector<double> buf(n);
  const long long inversions = merge_count(ys, buf, 0, n);
  const long long tied_y = tied_pairs_sorted(ys);

  const long long total = static_cast<long long>(n) * (n - 1) / 2;
  // concordant - discordant over all pairs; ties contribute zero.
  const long long s =
      total - tied_x - tied_y + tied_both - 2 * inversions;
  return static_cast<double>(s) / static_cast<double>(total);
}

}  // namespace detail

std::vector<double> compute_ranks(ConstVectorRef column) {
  if (column.size() < 1) {
    throw InvalidInputError("compute_ranks: empty column");
  }
  require_finite(column, "compute_ranks");
  const Index n = column.size();
  const auto order = detail::sort_order(column);
  std::vector<double> ranks(n);
  Index i = 0;
  while (i < n) {
    Index j = i + 1;
    while (j < n && column[order[j]] == column[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (Index k = i; k < j; ++k) ranks[order[k]] = midrank;
    i = j;
  }
  return ranks;
}

PairStat spearman_rho(ConstVectorRef x, ConstVectorRef y) {
  require_same_length(x, y);
  require_finite(x, "spearman_rho");
  require_finite(y, "spearman_rho");
  if (is_constant(x)) {
    throw UndefinedCorrelationError(
        "spearman_rho: first column is constant (zero rank variance)", 0);
  }
  if (is_constant(y)) {
    throw UndefinedCorrelationError(
        "spearman_rho: second column is constant (zero rank variance)", 1);
  }
  const auto rx = compute_ranks(x);
  const auto ry = compute_ranks(y);
  const Index n = x.size();
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double a = rx[i] - mean;
    const double b = ry[i] - mean;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  return {sxy / (std::sqrt(sxx) * std::sqrt(syy)), StatKind::spearman_rho};
}

PairStat kendall_tau(ConstVectorRef x, ConstVectorRef y) {
  require_same_length(x, y);
  require_finite(x, "kendall_tau");
  require_finite(y, "kendall_tau");
  if (is_constant(x)) {
    throw UndefinedCorrelationError("kendall_tau: first column is constant", 0);
  }
  if (is_constant(y)) {
    throw UndefinedCorrelationError("kendall_tau: second column is constant", 1);
  }
  const auto order = detail::sort_order(x);
  const auto runs = detail::tie_runs(x, order);
  return {detail::kendall_from_order(y, order, runs), StatKind::kendall_tau};
}

}  // namespace skeptic
