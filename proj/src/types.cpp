#include "skeptic/types.hpp"

#include <algorithm>
#include <cmath>

namespace skeptic {

std::string to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::skeptic_rho: return "spearman";
    case EstimatorKind::skeptic_tau: return "kendall";
    case EstimatorKind::normal_score: return "normal_score";
    case EstimatorKind::pearson: return "pearson";
  }
  return "unknown";
}

std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::glasso: return "glasso";
    case SolverKind::clime: return "clime";
    case SolverKind::gdantzig: return "gdantzig";
    case SolverKind::neighborhood_lasso: return "neighborhood_lasso";
  }
  return "unknown";
}

std::string to_string(TransformKind k) {
  switch (k) {
    case TransformKind::power: return "power";
    case TransformKind::cdf: return "cdf";
    case TransformKind::linear: return "linear";
  }
  return "unknown";
}

EstimatorKind estimator_from_string(const std::string& s) {
  if (s == "spearman") return EstimatorKind::skeptic_rho;
  if (s == "kendall") return EstimatorKind::skeptic_tau;
  if (s == "normal_score" || s == "ns") return EstimatorKind::normal_score;
  if (s == "pearson" || s == "normal") return EstimatorKind::pearson;
  throw InvalidInputError("unknown estimator: " + s);
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "glasso") return SolverKind::glasso;
  if (s == "clime") return SolverKind::clime;
  if (s == "gdantzig" || s == "dantzig") return SolverKind::gdantzig;
  if (s == "mb" || s == "neighborhood_lasso") return SolverKind::neighborhood_lasso;
  throw InvalidInputError("unknown solver: " + s);
}

TransformKind transform_from_string(const std::string& s) {
  if (s == "power") return TransformKind::power;
  if (s == "cdf") return TransformKind::cdf;
  if (s == "linear" || s == "none") return TransformKind::linear;
  throw InvalidInputError("unknown transform: " + s);
}

void Graph::add_edge(Index j, Index k) {
  if (j == k) throw InvalidInputError("graph: self-loop rejected");
  if (j > k) std::swap(j, k);
  edges.emplace_back(j, k);
}

void Graph::normalize() {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Graph::has_edge(Index j, Index k) const {
  if (j > k) std::swap(j, k);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(j, k));
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<size_t>(d), 0);
  for (const auto& [j, k] : edges) {
    ++deg[static_cast<size_t>(j)];
    ++deg[static_cast<size_t>(k)];
  }
  return deg;
}

Graph edges_from_omega(const Matrix& omega, double threshold) {
  Graph g;
  g.d = omega.rows();
  for (Index j = 0; j < omega.rows(); ++j) {
    for (Index k = j + 1; k < omega.cols(); ++k) {
      if (std::abs(omega(j, k)) > threshold) g.add_edge(j, k);
    }
  }
  g.normalize();
  return g;
}

}  // namespace skeptic
