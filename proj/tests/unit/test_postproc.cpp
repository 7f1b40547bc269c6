#include <cmath>
#include <vector>

#include "doctest.h"
#include "segpc/error.hpp"
#include "segpc/postproc.hpp"
#include "segpc/quadrature.hpp"
#include "segpc/stochastic_space.hpp"

using namespace segpc;

namespace {

PceSurrogate surrogate(std::vector<PolyFamily> fam, std::size_t p, std::vector<double> c) {
  ChaosBasis basis(std::move(fam), p);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  return PceSurrogate(std::move(basis), v);
}

}  // namespace

TEST_SUITE("postproc") {

TEST_CASE("moments from coefficients") {
  const auto a = moments_from_coefficients(surrogate({PolyFamily::Hermite}, 3, {3.0}));
  CHECK(a.mean == 3.0);
  CHECK(a.variance == 0.0);
  const auto b = moments_from_coefficients(surrogate({PolyFamily::Hermite, PolyFamily::Hermite}, 1, {0, 1, 1}));
  CHECK(b.variance == 2.0);
}

TEST_CASE("standard normal surrogate") {
  const PceSurrogate s = surrogate({PolyFamily::Hermite}, 2, {0.0, 1.0});
  const MomentsReport r = higher_moments(s);
  REQUIRE(r.skewness);
  CHECK(std::abs(*r.skewness) <= 1e-12);
  CHECK(std::abs(*r.kurtosis - 3.0) <= 0.01);

  HigherMomentScheme mc;
  mc.kind = HigherMomentScheme::Kind::SurrogateMc;
  mc.seed = 4;
  const MomentsReport rm = higher_moments(s, mc);
  CHECK(std::abs(*rm.kurtosis - 3.0) <= 0.01);
}

TEST_CASE("higher moments undefined below order 2 or at zero variance") {
  const MomentsReport r = higher_moments(surrogate({PolyFamily::Hermite}, 1, {0.0, 1.0}));
  CHECK_FALSE(r.skewness);
  CHECK_FALSE(r.kurtosis);
  const MomentsReport z = higher_moments(surrogate({PolyFamily::Hermite}, 3, {2.0}));
  CHECK_FALSE(z.skewness);
  CHECK_FALSE(sobol_total(surrogate({PolyFamily::Hermite}, 3, {2.0})));
}

TEST_CASE("tensor Gauss moments match an independent quadrature of the surrogate") {
  const PceSurrogate s = surrogate({PolyFamily::Hermite, PolyFamily::Legendre}, 3,
                                   {0.3, 1.0, -0.5, 0.4, 0.2, -0.3, 0.1, 0.05, 0.2, -0.1});
  const MomentsReport r = higher_moments(s);
  // Oversized tensor rule as the oracle.
  const QuadratureRule big = tensor_rule(s.basis().families(), 20);
  const Eigen::VectorXd y = s.eval_rows(big.nodes);
  const double mu = big.weights.dot(y);
  const Eigen::ArrayXd d = y.array() - mu;
  const double m2 = (big.weights.array() * d.square()).sum();
  const double m3 = (big.weights.array() * d.cube()).sum();
  const double m4 = (big.weights.array() * d.square().square()).sum();
  CHECK(r.mean == doctest::Approx(mu).epsilon(1e-12));
  CHECK(r.variance == doctest::Approx(m2).epsilon(1e-12));
  CHECK(*r.skewness == doctest::Approx(m3 / std::pow(m2, 1.5)).epsilon(1e-10));
  CHECK(*r.kurtosis == doctest::Approx(m4 / (m2 * m2)).epsilon(1e-10));
  CHECK(*r.kurtosis >= 1.0 + *r.skewness * *r.skewness);
}

TEST_CASE("Parseval variance agrees with surrogate sampling within 3 standard errors") {
  const PceSurrogate s = surrogate({PolyFamily::Hermite, PolyFamily::Hermite, PolyFamily::Legendre}, 2,
                                   {1.0, 0.8, -0.4, 0.3, 0.2, 0.1, -0.25, 0.15, 0.05, 0.3});
  const double var = moments_from_coefficients(s).variance;
  const auto space = StochasticSpace({Marginal::standard_gaussian(), Marginal::standard_gaussian(),
                                      Marginal::standard_uniform()});
  const std::size_t n = 1'000'000;
  const SamplePool pool = sample_pool(space, n, 17);
  const Eigen::VectorXd y = s.eval_rows(pool.points);
  MomentAccumulator acc;
  for (Eigen::Index i = 0; i < y.size(); ++i) acc.add(y[i]);
  // Standard error of the sample variance: sqrt((m4 - m2^2) / n).
  const double m2 = acc.variance();
  const double se = std::sqrt((*acc.kurtosis() - 1.0) * m2 * m2 / static_cast<double>(n));
  CHECK(std::abs(m2 - var) <= 3.0 * se);
}

TEST_CASE("antithetic sampling of an odd surrogate gives zero skewness") {
  // Only odd-degree Hermite terms: M(-xi) = -M(xi).
  const PceSurrogate s = surrogate({PolyFamily::Hermite, PolyFamily::Hermite}, 3,
                                   {0.0, 1.0, 0.5, 0.0, 0.0, 0.0, 0.3, 0.0, 0.2, -0.1});
  HigherMomentScheme mc;
  mc.kind = HigherMomentScheme::Kind::SurrogateMc;
  mc.samples = 100000;
  mc.antithetic = true;
  mc.seed = 3;
  const MomentsReport r = higher_moments(s, mc);
  REQUIRE(r.skewness);
  CHECK(std::abs(*r.skewness) <= 1e-3);
}

TEST_CASE("total Sobol indices") {
  const auto add = sobol_total(surrogate({PolyFamily::Hermite, PolyFamily::Hermite}, 1, {0, 1, 1}));
  REQUIRE(add);
  CHECK(add->total_indices[0] == 0.5);
  CHECK(add->total_indices[1] == 0.5);

  const PceSurrogate no2 = surrogate({PolyFamily::Hermite, PolyFamily::Hermite}, 2, {1, 0.5, 0, 0.3});
  CHECK(sobol_total(no2)->total_indices[1] == 0.0);

  const std::vector<double> c{0.2, 1.0, -0.5, 0.4, 0.2, -0.3};
  std::vector<double> c_scaled;
  for (double x : c) c_scaled.push_back(-3.7 * x);
  const auto s1 = sobol_total(surrogate({PolyFamily::Legendre, PolyFamily::Hermite}, 2, c));
  const auto s2 = sobol_total(surrogate({PolyFamily::Legendre, PolyFamily::Hermite}, 2, c_scaled));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(s1->total_indices[k] == doctest::Approx(s2->total_indices[k]).epsilon(1e-15));
    CHECK(s1->total_indices[k] >= 0.0);
    CHECK(s1->total_indices[k] <= 1.0);
  }
}

TEST_CASE("cost model") {
  CHECK(predicted_cost(Method::Segpc, 40, 2) == 42);
  CHECK(predicted_cost(Method::Wlsq, 40, 2) == 861);
  CHECK(predicted_cost(Method::Smolyak, 40, 1) == 81);
  for (std::size_t m = 1; m <= 12; ++m) {
    CHECK(predicted_cost(Method::Segpc, m, 1) == 2);
    CHECK(predicted_cost(Method::Wlsq, m, 1) == m + 1);
    CHECK(predicted_cost(Method::Wlsq, m, 2) == (m + 1) * (m + 2) / 2);
    CHECK(predicted_cost(Method::Smolyak, m, 1) == 2 * m + 1);
    CHECK(predicted_cost(Method::Smolyak, m, 2) == (m + 1) * (2 * m + 1));
    if (m % 2 == 0) CHECK(predicted_cost(Method::Segpc, m, 2) == m + 2);
  }
  CHECK_THROWS_AS(predicted_cost(Method::MonteCarlo, 3, 2), InvalidArgument);
  CHECK(parse_method("smolyak") == Method::Smolyak);
  CHECK_THROWS_AS(parse_method("sparse"), InvalidArgument);
}

}
