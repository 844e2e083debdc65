#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "skeptic/rank_core.hpp"
#include "skeptic/rng.hpp"

using namespace skeptic;

namespace {

Vector to_vec(const std::vector<double>& v) {
  Vector out(static_cast<Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = v[i];
  return out;
}

std::vector<double> random_column(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

std::vector<double> random_tied_column(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = std::floor(rng.uniform() * 8.0);
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("rank_core");

TEST_CASE("midranks on fixed inputs") {
  auto r = compute_ranks(to_vec({10, 20, 30}));
  CHECK(r == std::vector<double>{1, 2, 3});

  r = compute_ranks(to_vec({5, 5, 5}));
  CHECK(r == std::vector<double>{2, 2, 2});

  r = compute_ranks(to_vec({3, 1, 4, 1, 5}));
  CHECK(r == std::vector<double>{3, 1.5, 4, 1.5, 5});

  r = compute_ranks(to_vec({7}));
  CHECK(r == std::vector<double>{1});
}

TEST_CASE("rank invariants on random data") {
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const size_t n = 1 + static_cast<size_t>(rng.below(60));
    const auto col = rep % 2 ? random_tied_column(rng, n) : random_column(rng, n);
    const auto got = compute_ranks(to_vec(col));
    const auto expected = oracle::ranks(col);
    for (size_t i = 0; i < n; ++i) {
      CHECK(got[i] == expected[i]);
      CHECK(got[i] >= 1.0);
      CHECK(got[i] <= static_cast<double>(n));
    }
    double sum = 0;
    for (double v : got) sum += v;
    CHECK(sum == doctest::Approx(0.5 * n * (n + 1)));
  }
}

TEST_CASE("non-finite input rejected") {
  CHECK_THROWS_AS(compute_ranks(to_vec({1.0, std::nan(""), 2.0})),
                  InvalidInputError);
  CHECK_THROWS_AS(
      spearman_rho(to_vec({1.0, INFINITY, 2.0}), to_vec({1.0, 2.0, 3.0})),
      InvalidInputError);
}

TEST_CASE("spearman fixed examples") {
  const auto x = to_vec({1, 2, 3, 4, 5});
  CHECK(spearman_rho(x, x).value == doctest::Approx(1.0));
  CHECK(spearman_rho(x, to_vec({5, 4, 3, 2, 1})).value == doctest::Approx(-1.0));
  // sum of squared rank gaps is 4: 1 - 6*4 / (5*24) = 0.8
  CHECK(spearman_rho(x, to_vec({1, 3, 2, 5, 4})).value ==
        doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("kendall fixed examples") {
  const auto x = to_vec({1, 2, 3});
  CHECK(kendall_tau(x, x).value == doctest::Approx(1.0));
  CHECK(kendall_tau(x, to_vec({3, 2, 1})).value == doctest::Approx(-1.0));
  CHECK(kendall_tau(x, to_vec({1, 3, 2})).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("constant columns are rejected") {
  const auto c = to_vec({2, 2, 2, 2});
  const auto x = to_vec({1, 2, 3, 4});
  CHECK_THROWS_AS(spearman_rho(c, x), UndefinedCorrelationError);
  CHECK_THROWS_AS(spearman_rho(x, c), UndefinedCorrelationError);
  CHECK_THROWS_AS(kendall_tau(c, x), UndefinedCorrelationError);
  CHECK_THROWS_AS(kendall_tau(x, c), UndefinedCorrelationError);
}

TEST_CASE("oracle equivalence on random inputs") {
  Rng rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    const size_t n = 2 + static_cast<size_t>(rng.below(80));
    const bool ties = rep % 3 == 0;
    auto x = ties ? random_tied_column(rng, n) : random_column(rng, n);
    auto y = ties ? random_tied_column(rng, n) : random_column(rng, n);
    // skip degenerate constant draws
    bool xc = true, yc = true;
    for (size_t i = 1; i < n; ++i) {
      xc = xc && x[i] == x[0];
      yc = yc && y[i] == y[0];
    }
    if (xc || yc) continue;

    const double tau = kendall_tau(to_vec(x), to_vec(y)).value;
    CHECK(tau == doctest::Approx(oracle::kendall(x, y)).epsilon(1e-12));
    const double rho = spearman_rho(to_vec(x), to_vec(y)).value;
    CHECK(rho == doctest::Approx(oracle::spearman_via_ranks(x, y)).epsilon(1e-12));
    if (!ties) {
      CHECK(rho == doctest::Approx(oracle::spearman_no_ties(x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetry, antisymmetry, monotone invariance") {
  Rng rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    const size_t n = 3 + static_cast<size_t>(rng.below(50));
    const auto x = random_column(rng, n);
    const auto y = random_column(rng, n);
    const auto vx = to_vec(x);
    const auto vy = to_vec(y);

    CHECK(spearman_rho(vx, vy).value == spearman_rho(vy, vx).value);
    CHECK(kendall_tau(vx, vy).value == kendall_tau(vy, vx).value);

    CHECK(spearman_rho(vx, -vy).value == -spearman_rho(vx, vy).value);
    CHECK(kendall_tau(vx, -vy).value == -kendall_tau(vx, vy).value);

    // strictly increasing map: a*t + b*t^3 + c*tanh(t), positive weights
    const double a = 0.5 + rng.uniform();
    const double b = rng.uniform();
    const double c = rng.uniform();
    Vector gx(vx.size());
    for (Index i = 0; i < vx.size(); ++i) {
      const double t = vx[i];
      gx[i] = a * t + b * t * t * t + c * std::tanh(t);
    }
    CHECK(spearman_rho(gx, vy).value == spearman_rho(vx, vy).value);
    CHECK(kendall_tau(gx, vy).value == kendall_tau(vx, vy).value);
  }
}

TEST_CASE("kendall runtime scales near n log n") {
  Rng rng(31);
  const auto time_tau = [&](size_t n) {
    std::vector<double> x = random_column(rng, n);
    std::vector<double> y = random_column(rng, n);
    const auto vx = to_vec(x);
    const auto vy = to_vec(y);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      volatile double sink = kendall_tau(vx, vy).value;
      (void)sink;
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best,
                      std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };
  const double t_small = time_tau(10000);
  const double t_large = time_tau(100000);
  // n log n predicts ~13x; quadratic would be ~100x.
  CHECK(t_large / std::max(t_small, 1e-9) < 15.0);
}

TEST_SUITE_END();
