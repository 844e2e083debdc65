#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "oracles.hpp"
#include "skeptic/corr_estimators.hpp"
#include "skeptic/gaussian.hpp"
#include "skeptic/rng.hpp"

using namespace skeptic;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

Matrix gaussian_sample(Rng& rng, Index n, Index d) {
  Matrix m(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  }
  return m;
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(double) * static_cast<size_t>(a.size())) == 0;
}

}  // namespace

TEST_SUITE_BEGIN("corr_estimators");

TEST_CASE("normal quantile and cdf") {
  CHECK(std::abs(normal_quantile(0.5)) < 1e-15);
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.9599639845400545).epsilon(1e-12));
  CHECK(normal_quantile(0.025) ==
        doctest::Approx(-1.9599639845400545).epsilon(1e-12));
  for (double p : {1e-8, 1e-4, 0.1, 0.3, 0.7, 0.9, 0.9999, 1 - 1e-9}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
  CHECK_THROWS(normal_quantile(0.0));
  CHECK_THROWS(normal_quantile(1.0));
}

TEST_CASE("winsor delta formula") {
  CHECK(winsor_delta(100) == doctest::Approx(0.020785).epsilon(1e-4));
  const double direct =
      1.0 / (4.0 * std::pow(100.0, 0.25) * std::sqrt(kPi * std::log(100.0)));
  CHECK(winsor_delta(100) == direct);
  CHECK(winsor_delta(2) > 0.0);
  CHECK(winsor_delta(2) < 0.5);
  CHECK_THROWS(winsor_delta(1));
}

TEST_CASE("spearman bridge fixed values") {
  // x=(1..5), y=(1,3,2,5,4) has rho = 0.8.
  Matrix data(5, 2);
  data << 1, 1, 2, 3, 3, 2, 4, 5, 5, 4;
  const auto s = skeptic_spearman_matrix(data);
  CHECK(s.kind == EstimatorKind::skeptic_rho);
  CHECK(s.entries(0, 0) == 1.0);
  CHECK(s.entries(1, 1) == 1.0);
  CHECK(s.entries(0, 1) ==
        doctest::Approx(2.0 * std::sin(kPi * 0.8 / 6.0)).epsilon(1e-13));
  CHECK(s.entries(0, 1) == doctest::Approx(0.81347).epsilon(1e-4));

  Matrix same(4, 2);
  same << 1, 10, 2, 20, 3, 30, 4, 40;  // rho = 1 maps to exactly 1
  CHECK(skeptic_spearman_matrix(same).entries(0, 1) == doctest::Approx(1.0));
  Matrix rev(4, 2);
  rev << 1, 40, 2, 30, 3, 20, 4, 10;
  CHECK(skeptic_spearman_matrix(rev).entries(0, 1) == doctest::Approx(-1.0));

  Matrix zero(4, 2);
  zero << 1, 2, 2, 4, 3, 1, 4, 3;  // rank correlation 0 maps to 0
  CHECK(skeptic_spearman_matrix(zero).entries(0, 1) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kendall bridge fixed values") {
  Matrix data(3, 2);
  data << 1, 1, 2, 3, 3, 2;  // tau = 1/3 -> sin(pi/6) = 0.5
  const auto s = skeptic_kendall_matrix(data);
  CHECK(s.kind == EstimatorKind::skeptic_tau);
  CHECK(s.entries(0, 1) == doctest::Approx(0.5).epsilon(1e-14));

  Matrix same(3, 2);
  same << 1, 5, 2, 6, 3, 7;  // tau = 1 -> 1
  CHECK(skeptic_kendall_matrix(same).entries(0, 1) == doctest::Approx(1.0));

  Matrix mixed(4, 2);
  mixed << 1, 2, 2, 1, 3, 4, 4, 3;
  const double tau = oracle::kendall({1, 2, 3, 4}, {2, 1, 4, 3});
  CHECK(skeptic_kendall_matrix(mixed).entries(0, 1) ==
        doctest::Approx(std::sin(kPi / 2.0 * tau)).epsilon(1e-14));
}

TEST_CASE("skeptic matrices stay in [-1, 1] and symmetric") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix data = gaussian_sample(rng, 30, 6);
    for (Index i = 0; i < data.rows(); i += 3) data(i, 2) = 0.5;  // ties
    for (const auto& s :
         {skeptic_spearman_matrix(data), skeptic_kendall_matrix(data)}) {
      CHECK(s.entries.isApprox(s.entries.transpose(), 0.0));
      CHECK(s.entries.maxCoeff() <= 1.0 + 1e-15);
      CHECK(s.entries.minCoeff() >= -1.0 - 1e-15);
      for (Index j = 0; j < s.dim(); ++j) CHECK(s.entries(j, j) == 1.0);
    }
  }
}

TEST_CASE("monotone invariance is bit-exact; pearson is not invariant") {
  Rng rng(7);
  const Matrix data = gaussian_sample(rng, 40, 5);
  const auto rho0 = skeptic_spearman_matrix(data);
  const auto tau0 = skeptic_kendall_matrix(data);
  const auto pearson0 = pearson_matrix(data);

  Matrix warped = data;
  for (Index i = 0; i < warped.rows(); ++i) {
    const double t = warped(i, 2);
    warped(i, 2) = std::exp(t) + 0.3 * t;  // strictly increasing
  }
  CHECK(bitwise_equal(skeptic_spearman_matrix(warped).entries, rho0.entries));
  CHECK(bitwise_equal(skeptic_kendall_matrix(warped).entries, tau0.entries));
  CHECK_FALSE(bitwise_equal(pearson_matrix(warped).entries, pearson0.entries));
}

TEST_CASE("normal score estimator matches the literal oracle") {
  Rng rng(9);
  const Matrix data = gaussian_sample(rng, 50, 3);
  const auto s = normal_score_matrix(data);
  CHECK(s.kind == EstimatorKind::normal_score);
  const Matrix expected = oracle::normal_score_corr(data);
  CHECK((s.entries - expected).cwiseAbs().maxCoeff() < 1e-12);
  for (Index j = 0; j < 3; ++j) CHECK(s.entries(j, j) == 1.0);

  // winsorization keeps even a constant column finite
  Matrix tied = data;
  tied.col(1).setConstant(2.5);
  CHECK(normal_score_matrix(tied).entries.allFinite());
}

TEST_CASE("pearson estimator") {
  Matrix dup(4, 2);
  dup << 1, 1, 2, 2, 5, 5, 9, 9;
  CHECK(pearson_matrix(dup).entries(0, 1) == doctest::Approx(1.0));

  Matrix neg(4, 2);
  neg << 1, -1, 2, -2, 5, -5, 9, -9;
  CHECK(pearson_matrix(neg).entries(0, 1) == doctest::Approx(-1.0));

  Matrix data(5, 2);
  data << 1, 1, 2, 3, 3, 2, 4, 5, 5, 4;
  const double expected = oracle::pearson({1, 2, 3, 4, 5}, {1, 3, 2, 5, 4});
  CHECK(expected == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(pearson_matrix(data).entries(0, 1) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("constant column errors name the column") {
  Matrix data(4, 3);
  data << 1, 7, 2, 2, 7, 1, 3, 7, 4, 4, 7, 3;
  CHECK_THROWS_AS(skeptic_spearman_matrix(data), UndefinedCorrelationError);
  CHECK_THROWS_AS(skeptic_kendall_matrix(data), UndefinedCorrelationError);
  CHECK_THROWS_AS(pearson_matrix(data), UndefinedCorrelationError);
  try {
    skeptic_spearman_matrix(data);
  } catch (const UndefinedCorrelationError& e) {
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("column 1") != std::string::npos);
  }
}

TEST_CASE("psd repair") {
  CorrelationMatrix identity{Matrix::Identity(4, 4), EstimatorKind::pearson,
                             false};
  const auto fixed = psd_repair(identity, 1e-4);
  CHECK(fixed.psd_repaired);
  CHECK(bitwise_equal(fixed.entries, identity.entries));

  // indefinite 2x2: eigenvalues -0.02 and 2.02
  Matrix bad(2, 2);
  bad << 1.0, 1.02, 1.02, 1.0;
  CHECK(min_eigenvalue(bad) == doctest::Approx(-0.02));
  const auto repaired =
      psd_repair({bad, EstimatorKind::skeptic_rho, false}, 1e-4);
  CHECK(repaired.psd_repaired);
  CHECK(min_eigenvalue(repaired.entries) >= 1e-4 - 1e-12);
  CHECK(repaired.entries(0, 0) == 1.0);
  CHECK(repaired.entries(1, 1) == 1.0);
  CHECK(repaired.entries(0, 1) == repaired.entries(1, 0));
  CHECK(repaired.entries(0, 1) == doctest::Approx(1.0).epsilon(0.05));

  const auto again = psd_repair(repaired, 1e-4);
  CHECK(bitwise_equal(again.entries, repaired.entries));  // idempotent

  // indefinite rank-bridge matrix from a short, wide sample
  Rng rng(13);
  Matrix data = gaussian_sample(rng, 12, 10);
  const auto s = skeptic_kendall_matrix(data);
  const auto rep = psd_repair(s, 1e-4);
  CHECK(min_eigenvalue(rep.entries) >= 1e-4 - 1e-12);
  for (Index j = 0; j < rep.dim(); ++j) CHECK(rep.entries(j, j) == 1.0);
}

TEST_CASE("rank bridges are consistent on bivariate gaussian draws") {
  Rng rng(42);
  const Index n = 100000;
  for (double rho : {-0.5, 0.0, 0.5}) {
    Matrix data(n, 2);
    for (Index i = 0; i < n; ++i) {
      const double z1 = rng.normal();
      const double z2 = rho * z1 + std::sqrt(1.0 - rho * rho) * rng.normal();
      data(i, 0) = z1;
      data(i, 1) = z2;
    }
    CHECK(skeptic_spearman_matrix(data).entries(0, 1) ==
          doctest::Approx(rho).epsilon(0.02));
    CHECK(skeptic_kendall_matrix(data).entries(0, 1) ==
          doctest::Approx(rho).epsilon(0.02));
  }
}

TEST_SUITE_END();
