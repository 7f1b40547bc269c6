#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "segpc/error.hpp"
#include "segpc/models.hpp"
#include "segpc/quadrature.hpp"

using namespace segpc;

namespace {

// Exact moments of the standard measures, oracle for rule exactness.
double gaussian_moment(int k) {
  if (k % 2) return 0.0;
  double r = 1.0;
  for (int j = k - 1; j > 0; j -= 2) r *= j;
  return r;
}
double uniform_moment(int k) { return (k % 2) ? 0.0 : 1.0 / (k + 1); }

double moment(PolyFamily f, int k) {
  return f == PolyFamily::Hermite ? gaussian_moment(k) : uniform_moment(k);
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss rule examples") {
  const GaussRule h1 = gauss_rule(PolyFamily::Hermite, 1);
  CHECK(h1.nodes[0] == 0.0);
  CHECK(h1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const GaussRule h3 = gauss_rule(PolyFamily::Hermite, 3);
  CHECK(h3.nodes[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(h3.nodes[1] == 0.0);
  CHECK(h3.nodes[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(h3.weights[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(h3.weights[1] == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK(h3.weights[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));

  const GaussRule l2 = gauss_rule(PolyFamily::Legendre, 2);
  CHECK(l2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(l2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(l2.weights[0] == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(gauss_rule(PolyFamily::Legendre, 0), InvalidArgument);
}

TEST_CASE("1D rules integrate monomials up to degree 2n-1") {
  for (PolyFamily f : {PolyFamily::Hermite, PolyFamily::Legendre}) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const GaussRule r = gauss_rule(f, n);
      CHECK(std::abs(r.weights.sum() - 1.0) <= 1e-12);
      for (int k = 0; k <= static_cast<int>(2 * n - 1); ++k) {
        double q = 0.0, scale = 0.0;
        for (Eigen::Index i = 0; i < r.nodes.size(); ++i) {
          q += r.weights[i] * std::pow(r.nodes[i], k);
          scale += r.weights[i] * std::pow(std::abs(r.nodes[i]), k);
        }
        CHECK(std::abs(q - moment(f, k)) <= 1e-12 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("tensor rules integrate random polynomials of admissible degree") {
  const std::vector<PolyFamily> fam{PolyFamily::Hermite, PolyFamily::Legendre, PolyFamily::Hermite};
  const std::size_t n = 4;  // exact to degree 7 per coordinate
  const QuadratureRule rule = tensor_rule(fam, n);
  CHECK(rule.size() == 64);
  CHECK(std::abs(rule.weights.sum() - 1.0) <= 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> deg(0, 7);
  std::normal_distribution<double> coef;
  for (int t = 0; t < 20; ++t) {
    double exact = 0.0, q = 0.0;
    for (int term = 0; term < 5; ++term) {
      const int a = deg(rng), b = deg(rng), c = deg(rng);
      const double w = coef(rng);
      exact += w * moment(fam[0], a) * moment(fam[1], b) * moment(fam[2], c);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        q += rule.weights[r] * w * std::pow(rule.nodes(r, 0), a) * std::pow(rule.nodes(r, 1), b) *
             std::pow(rule.nodes(r, 2), c);
      }
    }
    CHECK(std::abs(q - exact) <= 1e-11 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("Smolyak rules") {
  for (std::size_t m = 1; m <= 6; ++m) {
    const std::vector<PolyFamily> fam(m, PolyFamily::Hermite);
    const QuadratureRule l1 = smolyak_rule(fam, 1);
    CHECK(l1.size() == 1);
    CHECK(l1.nodes.cwiseAbs().maxCoeff() == 0.0);
    CHECK(l1.weights[0] == doctest::Approx(1.0));
    const QuadratureRule l2 = smolyak_rule(fam, 2);
    CHECK(l2.size() == 2 * m + 1);
    CHECK(std::abs(l2.weights.sum() - 1.0) <= 1e-12);
    const QuadratureRule l4 = smolyak_rule(fam, 4);
    CHECK(std::abs(l4.weights.sum() - 1.0) <= 1e-12);
  }
  const QuadratureRule s = smolyak_rule({PolyFamily::Legendre}, 3);
  const GaussRule g = gauss_rule(PolyFamily::Legendre, 5);
  REQUIRE(s.size() == 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(s.nodes(i, 0) == doctest::Approx(g.nodes[i]).epsilon(1e-14));
    CHECK(s.weights[i] == doctest::Approx(g.weights[i]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(smolyak_rule({PolyFamily::Hermite}, 0), InvalidArgument);
  CHECK_THROWS_AS(smolyak_rule(std::vector<PolyFamily>(40, PolyFamily::Hermite), 9), SizeError);
}

TEST_CASE("merging is idempotent") {
  const QuadratureRule s = smolyak_rule({PolyFamily::Hermite, PolyFamily::Legendre, PolyFamily::Hermite}, 4);
  const QuadratureRule once = merge_nodes(s);
  const QuadratureRule twice = merge_nodes(once);
  CHECK(once.nodes == s.nodes);
  CHECK(once.weights == s.weights);
  CHECK(twice.nodes == once.nodes);
  CHECK(twice.weights == once.weights);
}

TEST_CASE("projection") {
  const std::vector<PolyFamily> fam{PolyFamily::Hermite, PolyFamily::Hermite};
  const ChaosBasis basis(fam, 3);
  const QuadratureRule rule = tensor_rule(fam, 4);
  const StochasticSpace space = StochasticSpace::iid(2, Marginal::standard_gaussian());
  FunctionModel constant("c", space, [](std::span<const double>) { return 2.5; });
  const PceSurrogate c = quadrature_fit(basis, rule, constant);
  CHECK(std::abs(c.coefficients()[0] - 2.5) <= 1e-12);
  CHECK(c.coefficients().tail(basis.size() - 1).cwiseAbs().maxCoeff() <= 1e-12);

  const Eigen::VectorXd psi2 = basis.eval_rows(rule.nodes).col(2);
  const Eigen::VectorXd e2 = project(basis, rule, psi2);
  for (Eigen::Index j = 0; j < e2.size(); ++j) CHECK(std::abs(e2[j] - (j == 2 ? 1.0 : 0.0)) <= 1e-12);

  const OdeModel ode(1.0);
  const ChaosBasis ob(ode.space(), 6);
  const PceSurrogate s = quadrature_fit(ob, smolyak_rule(ob.families(), 4), ode);
  CHECK(std::abs(s.coefficients()[0] - 0.632121) <= 1e-4);
  CHECK(s.report().evaluation_count == 7);
}

TEST_CASE("Monte Carlo examples") {
  const auto g1 = StochasticSpace::iid(1, Marginal::standard_gaussian());
  FunctionModel id("id", g1, [](std::span<const double> x) { return x[0]; });
  const MonteCarloResult r = monte_carlo_moments(id, 1'000'000, 1);
  CHECK(std::abs(r.mean) < 0.005);
  CHECK(std::abs(r.std - 1.0) < 0.005);
  REQUIRE(r.kurtosis);
  CHECK(std::abs(*r.kurtosis - 3.0) < 0.05);

  FunctionModel five("five", g1, [](std::span<const double>) { return 5.0; });
  const MonteCarloResult f = monte_carlo_moments(five, 1000, 1);
  CHECK(f.mean == 5.0);
  CHECK(f.std == 0.0);
  CHECK_FALSE(f.skewness);
  CHECK_FALSE(f.kurtosis);

  const IshigamiModel ish;
  const MonteCarloResult i = monte_carlo_moments(ish, 1'000'000, 2);
  CHECK(std::abs(i.mean - 3.5) < 0.02);
  CHECK(std::abs(i.std - 3.7208) < 0.02);

  CHECK_THROWS_AS(monte_carlo_moments(id, 1, 0), InvalidArgument);
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  const IshigamiModel ish;
  const MonteCarloResult a = monte_carlo_moments(ish, 5000, 9, 1, true);
  const MonteCarloResult b = monte_carlo_moments(ish, 5000, 9, 3, true);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.trace == b.trace);
}

TEST_CASE("Monte Carlo error decays like n^-1/2") {
  // M = xi^2 has mean 1; the error is averaged over seeds for a stable slope.
  const auto g1 = StochasticSpace::iid(1, Marginal::standard_gaussian());
  FunctionModel sq("sq", g1, [](std::span<const double> x) { return x[0] * x[0]; });
  std::vector<double> logn, loge;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double rms = 0.0;
    const int seeds = 40;
    for (int s = 0; s < seeds; ++s) {
      const double e = monte_carlo_moments(sq, n, 1000 + s).mean - 1.0;
      rms += e * e;
    }
    logn.push_back(std::log(static_cast<double>(n)));
    loge.push_back(0.5 * std::log(rms / seeds));
  }
  const double slope = (loge[2] - loge[0]) / (logn[2] - logn[0]);
  CHECK(std::abs(slope + 0.5) <= 0.15);
}

TEST_CASE("moment accumulator matches two-pass formulas") {
  std::mt19937_64 rng(8);
  std::gamma_distribution<double> gam(2.0, 1.5);
  std::vector<double> xs(5000);
  MomentAccumulator acc;
  for (double& x : xs) {
    x = gam(rng);
    acc.add(x);
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  CHECK(acc.mean() == doctest::Approx(mean).epsilon(1e-12));
  CHECK(acc.variance() == doctest::Approx(m2 / (n - 1)).epsilon(1e-12));
  CHECK(*acc.skewness() == doctest::Approx((m3 / n) / std::pow(m2 / n, 1.5)).epsilon(1e-10));
  CHECK(*acc.kurtosis() == doctest::Approx((m4 / n) / std::pow(m2 / n, 2)).epsilon(1e-10));
}

}
