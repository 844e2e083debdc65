#include <doctest.h>

#include <cmath>
#include <cstring>

#include "skeptic/corr_estimators.hpp"
#include "skeptic/gaussian.hpp"
#include "skeptic/rank_core.hpp"
#include "skeptic/synthetic_gen.hpp"

using namespace skeptic;

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

// Independent re-implementation of the generator policy: fresh points, the
// same inclusion law and cap, straightforward code.
double mc_expected_edges(Index d, double s, int max_degree, std::uint64_t seed,
                         int reps) {
  long long total = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
    std::vector<double> x(static_cast<size_t>(d)), y(static_cast<size_t>(d));
    for (Index i = 0; i < d; ++i) {
      x[static_cast<size_t>(i)] = rng.uniform();
      y[static_cast<size_t>(i)] = rng.uniform();
    }
    struct Pair {
      double p;
      Index i, j;
    };
    std::vector<Pair> pairs;
    for (Index i = 0; i < d; ++i) {
      for (Index j = i + 1; j < d; ++j) {
        const double dx = x[static_cast<size_t>(i)] - x[static_cast<size_t>(j)];
        const double dy = y[static_cast<size_t>(i)] - y[static_cast<size_t>(j)];
        pairs.push_back(
            {kInvSqrt2Pi * std::exp(-(dx * dx + dy * dy) / (2.0 * s)), i, j});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.p != b.p) return a.p > b.p;
      return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
    });
    std::vector<int> deg(static_cast<size_t>(d), 0);
    for (const auto& pr : pairs) {
      const double u = rng.uniform();
      if (u < pr.p && deg[static_cast<size_t>(pr.i)] < max_degree &&
          deg[static_cast<size_t>(pr.j)] < max_degree) {
        ++total;
        ++deg[static_cast<size_t>(pr.i)];
        ++deg[static_cast<size_t>(pr.j)];
      }
    }
  }
  return static_cast<double>(total) / reps;
}

}  // namespace

TEST_SUITE_BEGIN("synthetic_gen");

TEST_CASE("graph generator basics") {
  Rng rng(1);
  const Graph g1 = generate_graph(1, 0.125, 4, rng);
  CHECK(g1.d == 1);
  CHECK(g1.edges.empty());

  for (std::uint64_t seed : {2u, 3u, 4u}) {
    Rng a(seed);
    const Graph g = generate_graph(60, 0.125, 4, a);
    for (int deg : g.degrees()) CHECK(deg <= 4);
    for (const auto& [j, k] : g.edges) {
      CHECK(j < k);
      CHECK(k < 60);
    }
    Rng b(seed);
    const Graph h = generate_graph(60, 0.125, 4, b);
    CHECK(g.edges == h.edges);  // seed determinism
  }
}

TEST_CASE("inclusion probability at distance zero approaches 1/sqrt(2 pi)") {
  // huge s makes every pair behave as if coincident
  int edges = 0, pairs = 0;
  for (int rep = 0; rep < 3000; ++rep) {
    Rng rng(derive_seed(99, static_cast<std::uint64_t>(rep)));
    const Graph g = generate_graph(2, 1e12, 4, rng);
    edges += static_cast<int>(g.edges.size());
    pairs += 1;
  }
  const double freq = static_cast<double>(edges) / pairs;
  CHECK(freq == doctest::Approx(kInvSqrt2Pi).epsilon(0.08));
}

TEST_CASE("mean edge count matches an independent Monte Carlo oracle") {
  double impl_total = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng rng(derive_seed(7, static_cast<std::uint64_t>(rep)));
    impl_total += static_cast<double>(
        generate_graph(100, 0.125, 4, rng).edge_count());
  }
  const double impl_mean = impl_total / 100.0;
  const double oracle_mean = mc_expected_edges(100, 0.125, 4, 1234, 200);
  CHECK(impl_mean == doctest::Approx(oracle_mean).epsilon(0.20));
  CHECK(impl_mean > 10.0);  // sanity: the benchmark graph is non-trivial
}

TEST_CASE("model construction") {
  Graph empty;
  empty.d = 3;
  const ModelSpec trivial = build_model(empty);
  CHECK((trivial.omega0 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((trivial.sigma0 - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  // single edge, d = 2: closed-form 2x2 inverse, rescaled
  Graph pair;
  pair.d = 2;
  pair.add_edge(0, 1);
  pair.normalize();
  const ModelSpec m2 = build_model(pair);
  CHECK(m2.omega0(0, 1) == kEdgeWeight);
  Matrix direct(2, 2);
  const double det = 1.0 - kEdgeWeight * kEdgeWeight;
  direct << 1.0 / det, -kEdgeWeight / det, -kEdgeWeight / det, 1.0 / det;
  // rescaling a 2x2 with equal diagonal leaves off-diagonal / diagonal
  const double expected_corr = -kEdgeWeight / det / (1.0 / det);
  CHECK(m2.sigma0(0, 1) == doctest::Approx(expected_corr).epsilon(1e-12));
  CHECK(m2.sigma0(0, 0) == 1.0);

  // benchmark-size graph: support matches edges exactly, spectrum safe
  Rng rng(11);
  const Graph g = generate_graph(100, 0.125, 4, rng);
  const ModelSpec model = build_model(g);
  CHECK(min_eigenvalue(model.omega0) >= 0.02 - 1e-12);
  for (Index j = 0; j < 100; ++j) {
    for (Index k = j + 1; k < 100; ++k) {
      const bool edge = g.has_edge(j, k);
      CHECK((model.omega0(j, k) != 0.0) == edge);
      if (edge) CHECK(model.omega0(j, k) == kEdgeWeight);
    }
  }

  Graph overfull;
  overfull.d = 6;
  for (Index k = 1; k < 6; ++k) overfull.add_edge(0, k);
  overfull.normalize();
  CHECK_THROWS_AS(build_model(overfull), InvalidInputError);
}

TEST_CASE("transform formulas") {
  CHECK(apply_transform(TransformKind::power, 2.0) == 8.0);
  CHECK(apply_transform(TransformKind::power, -2.0) == -8.0);
  CHECK(apply_transform(TransformKind::power, 0.0) == 0.0);
  CHECK(apply_transform(TransformKind::cdf, 0.05) == doctest::Approx(0.5));
  CHECK(apply_transform(TransformKind::cdf, 0.05 + 0.4) ==
        doctest::Approx(normal_cdf(1.0)).epsilon(1e-15));
  CHECK(apply_transform(TransformKind::linear, 1.75) == 1.75);
}

TEST_CASE("sampler determinism and transform behavior") {
  Rng rng(21);
  const Graph g = generate_graph(10, 0.125, 4, rng);
  const ModelSpec linear = build_model(g, TransformKind::linear);
  const ModelSpec power = build_model(g, TransformKind::power);
  const ModelSpec cdf = build_model(g, TransformKind::cdf);

  Rng r1(77), r2(77), r3(77);
  const Matrix z = sample_npn(linear, 500, r1);
  const Matrix x_power = sample_npn(power, 500, r2);
  const Matrix x_cdf = sample_npn(cdf, 500, r3);

  // same seed, same gaussian draw: power output is the cubed draw
  for (Index i = 0; i < 20; ++i) {
    for (Index j = 0; j < 10; ++j) {
      CHECK(x_power(i, j) == z(i, j) * z(i, j) * z(i, j));
    }
  }
  CHECK(x_cdf.minCoeff() > 0.0);
  CHECK(x_cdf.maxCoeff() < 1.0);

  // rank statistics see through the monotone transform, bit for bit
  const double rho_z = spearman_rho(z.col(0), z.col(1)).value;
  const double rho_x = spearman_rho(x_power.col(0), x_power.col(1)).value;
  CHECK(rho_z == rho_x);

  Rng r4(77);
  const Matrix again = sample_npn(linear, 500, r4);
  CHECK(std::memcmp(z.data(), again.data(),
                    sizeof(double) * static_cast<size_t>(z.size())) == 0);
}

TEST_CASE("linear sampler converges to the model correlation") {
  Rng rng(31);
  const Graph g = generate_graph(4, 0.5, 4, rng);
  const ModelSpec model = build_model(g);
  Rng sampler(32);
  const Matrix x = sample_npn(model, 100000, sampler);
  const auto s = pearson_matrix(x);
  CHECK((s.entries - model.sigma0).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("skeptic estimators target the model correlation end to end") {
  Rng rng(41);
  const Graph g = generate_graph(10, 0.125, 4, rng);
  const ModelSpec model = build_model(g, TransformKind::power);
  Rng sampler(42);
  const Matrix x = sample_npn(model, 100000, sampler);
  const auto s_rho = skeptic_spearman_matrix(x);
  const auto s_tau = skeptic_kendall_matrix(x);
  CHECK((s_rho.entries - model.sigma0).cwiseAbs().maxCoeff() < 0.02);
  CHECK((s_tau.entries - model.sigma0).cwiseAbs().maxCoeff() < 0.02);
}

TEST_SUITE_END();
