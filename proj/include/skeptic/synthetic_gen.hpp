#pragma once

#include "skeptic/rng.hpp"
#include "skeptic/types.hpp"

namespace skeptic {

// Truth model for the synthetic benchmark: omega0 = I + weight * adjacency,
// sigma0 = inverse of omega0 rescaled to unit diagonal.
struct ModelSpec {
  Matrix omega0;
  Matrix sigma0;
  Graph graph;
  TransformKind transform = TransformKind::linear;
};

inline constexpr double kEdgeWeight = 0.245;
inline constexpr double kDefaultSparsity = 0.125;
inline constexpr int kDefaultMaxDegree = 4;

// Random geometric graph: vertices get Uniform[0,1]^2 points; a pair enters
// with probability exp(-dist^2 / 2s) / sqrt(2 pi). Candidate pairs are
// visited in decreasing probability order and accepted only while both
// endpoints stay under the degree cap.
Graph generate_graph(Index d, double s, int max_degree, Rng& rng);

ModelSpec build_model(const Graph& graph,
                      TransformKind transform = TransformKind::linear);

// n draws of X = g(Z), Z ~ N(0, sigma0), with g applied columnwise:
// power    g(t) = sign(t) |t|^3
// cdf      g(t) = Phi((t - 0.05) / 0.4)
// linear   g(t) = t
Matrix sample_npn(const ModelSpec& model, Index n, Rng& rng);

double apply_transform(TransformKind kind, double t);

}  // namespace skeptic
