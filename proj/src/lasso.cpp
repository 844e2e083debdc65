#include <algorithm>
#include <cmath>
#include <limits>

#include "skeptic/graph_solvers.hpp"

namespace skeptic {

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

Vector solve_lasso_gram(const Matrix& G, const Vector& c, double lambda,
                        const SolverConfig& cfg, const Vector* warm,
                        int* iterations_out) {
  const Index p = G.rows();
  if (G.cols() != p || c.size() != p) {
    throw InvalidInputError("solve_lasso_gram: dimension mismatch");
  }
  if (lambda < 0.0) {
    throw InvalidInputError("solve_lasso_gram: lambda must be >= 0");
  }
  for (Index k = 0; k < p; ++k) {
    if (G(k, k) <= 0.0) {
      throw InvalidInputError("solve_lasso_gram: Gram diagonal must be positive");
    }
  }

  Vector theta = (warm && warm->size() == p) ? *warm : Vector::Zero(p);
  // grad = G theta - c, maintained incrementally.
  Vector grad = G * theta - c;

  int iterations = 0;
  auto sweep = [&](bool active_only) -> double {
    double max_change = 0.0;
    for (Index k = 0; k < p; ++k) {
      if (active_only && theta[k] == 0.0) continue;
      const double old = theta[k];
      const double z = old - grad[k] / G(k, k);
      const double next = soft_threshold(z, lambda / G(k, k));
      if (next != old) {
        theta[k] = next;
        grad += (next - old) * G.col(k);
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    ++iterations;
    return max_change;
  };

  // Subgradient violation at the current iterate, from the cached gradient.
  auto kkt_residual = [&]() -> double {
    double worst = 0.0;
    for (Index k = 0; k < p; ++k) {
      const double g = grad[k];
      const double v = (theta[k] == 0.0)
                           ? std::max(0.0, std::abs(g) - lambda)
                           : std::abs(g + lambda * (theta[k] > 0 ? 1.0 : -1.0));
      worst = std::max(worst, v);
    }
    return worst;
  };

  // Full sweeps establish the active set; cheap active-set sweeps polish it.
  double residual = kkt_residual();
  while (residual > cfg.convergence_tol && iterations < cfg.max_iterations) {
    sweep(false);
    double inner = std::numeric_limits<double>::infinity();
    while (inner > 0.1 * cfg.convergence_tol &&
           iterations < cfg.max_iterations) {
      inner = sweep(true);
    }
    residual = kkt_residual();
  }
  if (iterations_out) *iterations_out = iterations;
  if (residual > cfg.convergence_tol) {
    throw ConvergenceError("solve_lasso_gram: no convergence in " +
                               std::to_string(cfg.max_iterations) + " sweeps",
                           theta, iterations, residual);
  }
  return theta;
}

}  // namespace skeptic
