#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "segpc/error.hpp"
#include "segpc/stochastic_space.hpp"

using namespace segpc;

TEST_SUITE("stochastic_space") {

TEST_CASE("marginal validation") {
  CHECK_THROWS_AS(Marginal(GaussianMarginal{0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Marginal(UniformMarginal{1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(StochasticSpace(std::vector<Marginal>{}), InvalidArgument);
}

TEST_CASE("affine maps") {
  const Marginal g(GaussianMarginal{4.0, 0.4});
  CHECK(g.standardize(4.0) == 0.0);
  const Marginal u(UniformMarginal{-std::numbers::pi, std::numbers::pi});
  CHECK(u.standardize(std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-15));
  const Marginal h(GaussianMarginal{0.75, 0.16});
  CHECK(h.destandardize(2.0) == doctest::Approx(1.07).epsilon(1e-15));

  const StochasticSpace space({g, u});
  const std::vector<double> x{1.0};
  CHECK_THROWS_AS(space.standardize(x), InvalidArgument);
}

TEST_CASE("round trip to 1e-14 over 1000 points per kind") {
  StandardSampler rng(11);
  const Marginal g(GaussianMarginal{-3.0, 2.5});
  const Marginal u(UniformMarginal{-0.2, 7.0});
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.standard_normal();
    const double b = rng.standard_uniform();
    CHECK(std::abs(g.standardize(g.destandardize(a)) - a) <= 1e-14);
    CHECK(std::abs(u.standardize(u.destandardize(b)) - b) <= 1e-14);
  }
}

TEST_CASE("joint pdf") {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const auto g1 = StochasticSpace::iid(1, Marginal::standard_gaussian());
  CHECK(g1.joint_pdf(std::vector<double>{0.0}) == doctest::Approx(inv_sqrt_2pi).epsilon(1e-15));
  const auto u2 = StochasticSpace::iid(2, Marginal::standard_uniform());
  CHECK(u2.joint_pdf(std::vector<double>{0.3, -0.9}) == doctest::Approx(0.25));
  CHECK(u2.joint_pdf(std::vector<double>{1.3, 0.0}) == 0.0);
  const auto g2 = StochasticSpace::iid(2, Marginal::standard_gaussian());
  CHECK(g2.joint_pdf(std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

  // Factorization holds exactly for a mixed space.
  const StochasticSpace mixed({Marginal::standard_gaussian(), Marginal::standard_uniform()});
  const std::vector<double> xi{0.7, -0.4};
  CHECK(mixed.joint_pdf(xi) ==
        mixed.marginal(0).standard_pdf(0.7) * mixed.marginal(1).standard_pdf(-0.4));
}

TEST_CASE("sample pools") {
  const auto g2 = StochasticSpace::iid(2, Marginal::standard_gaussian());
  const SamplePool pool = sample_pool(g2, 10000, 7);
  CHECK(pool.size() == 10000);
  CHECK(pool.dim() == 2);
  CHECK(std::abs(pool.points.col(0).mean()) < 0.05);
  CHECK(std::abs(pool.points.col(1).mean()) < 0.05);
  CHECK(sample_pool(g2, 10000, 7).points == pool.points);

  const auto u1 = StochasticSpace::iid(1, Marginal::standard_uniform());
  const SamplePool up = sample_pool(u1, 5, 0);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(up.points(i, 0) >= -1.0);
    CHECK(up.points(i, 0) <= 1.0);
  }
  CHECK_THROWS_AS(sample_pool(u1, 0, 0), InvalidArgument);
}

TEST_CASE("moments of 1e6 standard normal draws") {
  StandardSampler rng(2024);
  const int n = 1'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.standard_normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 5e-3);
  CHECK(std::abs(var - 1.0) < 5e-3);
}

TEST_CASE("uniform stream stays in the open unit interval") {
  StandardSampler rng(0);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.unit();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
}

}
