#include "skeptic/synthetic_gen.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <vector>

#include "skeptic/gaussian.hpp"

namespace skeptic {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

}  // namespace

Graph generate_graph(Index d, double s, int max_degree, Rng& rng) {
  if (d < 1) throw InvalidInputError("generate_graph: d must be >= 1");
  if (s <= 0.0) throw InvalidInputError("generate_graph: s must be > 0");

  std::vector<double> px(static_cast<size_t>(d)), py(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    px[static_cast<size_t>(i)] = rng.uniform();
    py[static_cast<size_t>(i)] = rng.uniform();
  }

  struct Candidate {
    double prob;
    Index i, j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<size_t>(d * (d - 1) / 2));
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      const double dx = px[static_cast<size_t>(i)] - px[static_cast<size_t>(j)];
      const double dy = py[static_cast<size_t>(i)] - py[static_cast<size_t>(j)];
      const double dist2 = dx * dx + dy * dy;
      candidates.push_back(
          {kInvSqrt2Pi * std::exp(-dist2 / (2.0 * s)), i, j});
    }
  }
  // Decreasing probability; ties broken lexicographically for determinism.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.prob != b.prob) return a.prob > b.prob;
              return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
            });

  Graph g;
  g.d = d;
  std::vector<int> degree(static_cast<size_t>(d), 0);
  for (const auto& c : candidates) {
    const double u = rng.uniform();  // one draw per pair, cap or not
    if (u < c.prob && degree[static_cast<size_t>(c.i)] < max_degree &&
        degree[static_cast<size_t>(c.j)] < max_degree) {
      g.add_edge(c.i, c.j);
      ++degree[static_cast<size_t>(c.i)];
      ++degree[static_cast<size_t>(c.j)];
    }
  }
  g.normalize();
  return g;
}

ModelSpec build_model(const Graph& graph, TransformKind transform) {
  const Index d = graph.d;
  if (d < 1) throw InvalidInputError("build_model: empty graph spec");
  for (int deg : graph.degrees()) {
    if (deg > kDefaultMaxDegree) {
      throw InvalidInputError(
          "build_model: graph degree exceeds the cap that guarantees "
          "positive definiteness");
    }
  }

  ModelSpec model;
  model.graph = graph;
  model.transform = transform;
  model.omega0 = Matrix::Identity(d, d);
  for (const auto& [j, k] : graph.edges) {
    model.omega0(j, k) = kEdgeWeight;
    model.omega0(k, j) = kEdgeWeight;
  }

  Eigen::LLT<Matrix> llt(model.omega0);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("build_model: omega0 not positive definite");
  }
  Matrix sigma = llt.solve(Matrix::Identity(d, d));
  Vector inv_sqrt_diag(d);
  for (Index j = 0; j < d; ++j) inv_sqrt_diag[j] = 1.0 / std::sqrt(sigma(j, j));
  model.sigma0 =
      inv_sqrt_diag.asDiagonal() * sigma * inv_sqrt_diag.asDiagonal();
  model.sigma0 = (0.5 * (model.sigma0 + model.sigma0.transpose())).eval();
  for (Index j = 0; j < d; ++j) model.sigma0(j, j) = 1.0;
  return model;
}

double apply_transform(TransformKind kind, double t) {
  switch (kind) {
    case TransformKind::power:
      return t * t * t;  // sign(t)|t|^3
    case TransformKind::cdf: {
      // doubles saturate in the far tail; clamp into the open unit interval
      const double u = normal_cdf((t - 0.05) / 0.4);
      return std::min(std::max(u, std::numeric_limits<double>::min()),
                      1.0 - std::numeric_limits<double>::epsilon() / 2);
    }
    case TransformKind::linear:
      return t;
  }
  return t;
}

Matrix sample_npn(const ModelSpec& model, Index n, Rng& rng) {
  if (n < 1) throw InvalidInputError("sample_npn: n must be >= 1");
  const Index d = model.sigma0.rows();
  Eigen::LLT<Matrix> llt(model.sigma0);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("sample_npn: sigma0 factorization failed");
  }
  const Matrix chol = llt.matrixL();

  Matrix x(n, d);
  Vector z(d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) z[j] = rng.normal();
    const Vector row = chol * z;
    for (Index j = 0; j < d; ++j) {
      x(i, j) = apply_transform(model.transform, row[j]);
    }
  }
  return x;
}

}  // namespace skeptic
