#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeptic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using ConstVectorRef = Eigen::Ref<const Vector>;
using ConstMatrixRef = Eigen::Ref<const Matrix>;

enum class StatKind { spearman_rho, kendall_tau, pearson };

enum class EstimatorKind { skeptic_rho, skeptic_tau, normal_score, pearson };

enum class SolverKind { glasso, clime, gdantzig, neighborhood_lasso };

enum class TransformKind { power, cdf, linear };

enum class NeighborhoodRule { AND, OR };

std::string to_string(EstimatorKind k);
std::string to_string(SolverKind k);
std::string to_string(TransformKind k);
EstimatorKind estimator_from_string(const std::string& s);
SolverKind solver_from_string(const std::string& s);
TransformKind transform_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto exit codes; library callers catch by type.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-contract input (non-finite values, ragged CSV, ...).
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// A constant column has zero rank variance; its correlations are undefined.
class UndefinedCorrelationError : public Error {
 public:
  UndefinedCorrelationError(const std::string& msg, Index column)
      : Error(msg), column_(column) {}
  Index column() const { return column_; }

 private:
  Index column_;
};

// Iterative solver ran out of iterations. Carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, Matrix last_iterate, int iterations,
                   double residual)
      : Error(msg),
        last_iterate_(std::move(last_iterate)),
        iterations_(iterations),
        residual_(residual) {}
  const Matrix& last_iterate() const { return last_iterate_; }
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  Matrix last_iterate_;
  int iterations_;
  double residual_;
};

// Constraint set of a column LP is empty at the requested tolerance.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& msg, Index column, double min_feasible)
      : Error(msg), column_(column), min_feasible_(min_feasible) {}
  Index column() const { return column_; }
  double min_feasible() const { return min_feasible_; }

 private:
  Index column_;
  double min_feasible_;
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& msg) : Error(msg) {}
};

class NotPositiveDefiniteError : public Error {
 public:
  explicit NotPositiveDefiniteError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------

// Undirected graph over vertices {0..d-1}; edges stored sorted with j < k.
struct Graph {
  Index d = 0;
  std::vector<std::pair<Index, Index>> edges;

  void add_edge(Index j, Index k);
  bool has_edge(Index j, Index k) const;
  std::vector<int> degrees() const;
  Index edge_count() const { return static_cast<Index>(edges.size()); }
  void normalize();  // sort, dedupe, enforce j < k
};

struct PairStat {
  double value = 0.0;
  StatKind kind = StatKind::pearson;
};

struct CorrelationMatrix {
  Matrix entries;
  EstimatorKind kind = EstimatorKind::pearson;
  bool psd_repaired = false;

  Index dim() const { return entries.rows(); }
};

struct SolverConfig {
  int max_iterations = 10000;  // inner coordinate-descent iterations
  int max_sweeps = 200;        // outer sweeps (glasso)
  double convergence_tol = 1e-6;
  double edge_threshold = 1e-6;
  double psd_floor = 1e-4;
};

struct SolverDiagnostics {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = true;
};

struct PrecisionEstimate {
  Matrix omega;
  Graph edge_set;
  double lambda = 0.0;
  SolverKind solver = SolverKind::glasso;
  SolverDiagnostics diagnostics;
};

// Edge set induced by thresholding |omega_jk|.
Graph edges_from_omega(const Matrix& omega, double threshold);

}  // namespace skeptic
