#include "skeptic/corr_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "skeptic/gaussian.hpp"
#include "skeptic/parallel.hpp"
#include "skeptic/rank_core.hpp"

namespace skeptic {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_data(ConstMatrixRef data, Index min_rows) {
  if (data.rows() < min_rows || data.cols() < 1) {
    throw InvalidInputError("data matrix needs at least " +
                            std::to_string(min_rows) + " rows and one column");
  }
  for (Index j = 0; j < data.cols(); ++j) {
    for (Index i = 0; i < data.rows(); ++i) {
      if (!std::isfinite(data(i, j))) {
        throw InvalidInputError("non-finite value at row " + std::to_string(i) +
                                ", column " + std::to_string(j));
      }
    }
  }
}

void require_no_constant_columns(ConstMatrixRef data, const char* what) {
  for (Index j = 0; j < data.cols(); ++j) {
    bool constant = true;
    for (Index i = 1; i < data.rows(); ++i) {
      if (data(i, j) != data(0, j)) {
        constant = false;
        break;
      }
    }
    if (constant) {
      throw UndefinedCorrelationError(
          std::string(what) + ": column " + std::to_string(j) +
              " is constant; its correlations are undefined",
          j);
    }
  }
}

// Correlation matrix of the columns of `scores`, optionally centering them.
// Diagonal is forced to exactly 1.
Matrix correlation_of(const Matrix& scores, bool center) {
  const Index n = scores.rows();
  const Index d = scores.cols();
  Matrix work = scores;
  if (center) {
    work.rowwise() -= work.colwise().mean();
  }
  Matrix gram = work.transpose() * work;
  Vector norms(d);
  for (Index j = 0; j < d; ++j) norms[j] = std::sqrt(gram(j, j));
  Matrix out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      out(j, k) = gram(j, k) / (norms[j] * norms[k]);
    }
    out(j, j) = 1.0;
  }
  (void)n;
  return out;
}

}  // namespace

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric,
                                            Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

CorrelationMatrix skeptic_spearman_matrix(ConstMatrixRef data,
                                          int num_threads) {
  require_data(data, 2);
  require_no_constant_columns(data, "skeptic_spearman_matrix");
  const Index n = data.rows();
  const Index d = data.cols();

  Matrix ranks(n, d);
  parallel_for_each(
      d,
      [&](std::ptrdiff_t j) {
        const auto r = compute_ranks(data.col(j));
        for (Index i = 0; i < n; ++i) ranks(i, static_cast<Index>(j)) = r[i];
      },
      num_threads);

  Matrix rho = correlation_of(ranks, /*center=*/true);
  Matrix out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      out(j, k) = 2.0 * std::sin(kPi / 6.0 * rho(j, k));
    }
    out(j, j) = 1.0;
  }
  return {std::move(out), EstimatorKind::skeptic_rho, false};
}

CorrelationMatrix skeptic_kendall_matrix(ConstMatrixRef data, int num_threads) {
  require_data(data, 2);
  require_no_constant_columns(data, "skeptic_kendall_matrix");
  const Index d = data.cols();

  // Sort orders and tie runs are shared across all pairs involving a column.
  std::vector<std::vector<Index>> orders(d);
  std::vector<std::vector<std::pair<Index, Index>>> runs(d);
  parallel_for_each(
      d,
      [&](std::ptrdiff_t j) {
        orders[j] = detail::sort_order(data.col(j));
        runs[j] = detail::tie_runs(data.col(j), orders[j]);
      },
      num_threads);

  Matrix out = Matrix::Identity(d, d);
  parallel_for_each(
      d,
      [&](std::ptrdiff_t j) {
        for (Index k = static_cast<Index>(j) + 1; k < d; ++k) {
          const double tau =
              detail::kendall_from_order(data.col(k), orders[j], runs[j]);
          const double entry = std::sin(kPi / 2.0 * tau);
          out(j, k) = entry;
          out(k, j) = entry;
        }
      },
      num_threads);
  return {std::move(out), EstimatorKind::skeptic_tau, false};
}

CorrelationMatrix normal_score_matrix(ConstMatrixRef data) {
  require_data(data, 2);
  const Index n = data.rows();
  const Index d = data.cols();
  const double delta = winsor_delta(n);
  const double lo = delta;
  const double hi = 1.0 - delta;

  Matrix scores(n, d);
  for (Index j = 0; j < d; ++j) {
    std::vector<double> sorted(n);
    for (Index i = 0; i < n; ++i) sorted[i] = data(i, j);
    std::sort(sorted.begin(), sorted.end());
    for (Index i = 0; i < n; ++i) {
      const auto ub =
          std::upper_bound(sorted.begin(), sorted.end(), data(i, j));
      const double cdf =
          static_cast<double>(ub - sorted.begin()) / static_cast<double>(n + 1);
      scores(i, j) = normal_quantile(std::clamp(cdf, lo, hi));
    }
  }
  Matrix out = correlation_of(scores, /*center=*/false);
  return {std::move(out), EstimatorKind::normal_score, false};
}

CorrelationMatrix pearson_matrix(ConstMatrixRef data) {
  require_data(data, 2);
  require_no_constant_columns(data, "pearson_matrix");
  Matrix out = correlation_of(data, /*center=*/true);
  return {std::move(out), EstimatorKind::pearson, false};
}

CorrelationMatrix psd_repair(const CorrelationMatrix& s, double floor) {
  if (floor <= 0.0) {
    throw InvalidInputError("psd_repair: floor must be positive");
  }
  const Index d = s.dim();
  if (!s.entries.isApprox(s.entries.transpose(), 0.0)) {
    throw InvalidInputError("psd_repair: matrix is not symmetric");
  }
  CorrelationMatrix out = s;
  out.psd_repaired = true;
  if (min_eigenvalue(s.entries) >= floor) {
    return out;
  }
  Matrix m = s.entries;
  for (int pass = 0; pass < 100; ++pass) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    if (eig.eigenvalues().minCoeff() >= floor) break;
    Vector clipped = eig.eigenvalues().cwiseMax(floor);
    m = eig.eigenvectors() * clipped.asDiagonal() *
        eig.eigenvectors().transpose();
    // Rescale to unit diagonal; this can push the spectrum slightly below
    // the floor again, hence the loop.
    Vector inv_sqrt_diag(d);
    for (Index j = 0; j < d; ++j) inv_sqrt_diag[j] = 1.0 / std::sqrt(m(j, j));
    m = inv_sqrt_diag.asDiagonal() * m * inv_sqrt_diag.asDiagonal();
    m = 0.5 * (m + m.transpose().eval());
    for (Index j = 0; j < d; ++j) m(j, j) = 1.0;
  }
  out.entries = std::move(m);
  return out;
}

}  // namespace skeptic
