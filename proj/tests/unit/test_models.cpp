#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "segpc/design.hpp"
#include "segpc/models.hpp"
#include "segpc/regression.hpp"

using namespace segpc;

namespace {

void check_gradient_fd(const Model& model, const std::vector<double>& xi, double tol) {
  const ModelEvaluation e = model.evaluate(xi, true);
  REQUIRE(e.gradient.size() == xi.size());
  CHECK(e.cost_units == 2);
  const double h = 1e-6;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    auto xp = xi, xm = xi;
    xp[k] += h;
    xm[k] -= h;
    const double fd = (model.evaluate(xp, false).value - model.evaluate(xm, false).value) / (2 * h);
    CHECK(std::abs(e.gradient[k] - fd) <= tol * std::max(1.0, std::abs(fd)));
  }
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("ODE examples") {
  const OdeModel t0(0.0);
  const auto e0 = t0.evaluate_physical(std::vector<double>{0.37}, true);
  CHECK(e0.value == 1.0);
  CHECK(e0.gradient[0] == 0.0);
  const OdeModel t1(1.0);
  const auto e1 = t1.evaluate_physical(std::vector<double>{0.5}, true);
  CHECK(e1.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(e1.gradient[0] == doctest::Approx(-std::exp(-0.5)).epsilon(1e-15));
  // Standard coordinate: k = (xi + 1) / 2.
  const auto s1 = t1.evaluate(std::vector<double>{0.0}, true);
  CHECK(s1.gradient[0] == doctest::Approx(-0.5 * std::exp(-0.5)).epsilon(1e-15));
  CHECK(OdeModel::exact_mean(2.0) == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-15));
  CHECK(OdeModel::exact_mean(0.0) == 1.0);
  CHECK(OdeModel::exact_variance(0.0) == 0.0);
  CHECK_THROWS(OdeModel(-1.0));
}

TEST_CASE("Ishigami examples") {
  const IshigamiModel ish;
  const auto o = ish.evaluate_physical(std::vector<double>{0, 0, 0}, true);
  CHECK(o.value == 0.0);
  CHECK(o.gradient == std::vector<double>{1.0, 0.0, 0.0});
  const double h = std::numbers::pi / 2;
  CHECK(ish.evaluate_physical(std::vector<double>{h, h, 0}, false).value == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(ish.exact_mean() == 3.5);
  CHECK(std::sqrt(ish.exact_variance()) == doctest::Approx(3.7208).epsilon(1e-4));
  const auto st = ish.exact_total_sobol();
  CHECK(st[0] == doctest::Approx(0.5574).epsilon(1e-3));
  CHECK(st[1] == doctest::Approx(0.4424).epsilon(1e-3));
  CHECK(st[2] == doctest::Approx(0.2436).epsilon(1e-3));
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  const OdeModel ode(2.5);
  const IshigamiModel ish;
  for (int t = 0; t < 50; ++t) {
    check_gradient_fd(ode, {u(rng)}, 1e-7);
    check_gradient_fd(ish, {u(rng), u(rng), u(rng)}, 1e-7);
  }
}

TEST_CASE("ODE se-gPC with the top 4 QR points over t in [0, 3]") {
  for (double t = 0.0; t <= 3.0 + 1e-12; t += 0.25) {
    const OdeModel ode(t);
    const ChaosBasis basis(ode.space(), 6);
    const RankedDesign d = rank_design(ode.space(), basis, 10000, 1, 4);
    const PceSurrogate s = fit_segpc(basis, d.points, d.w_sqrt, ode);
    CHECK(s.report().n_points == 4);
    CHECK(s.report().evaluation_count == 8);
    const double mean = s.coefficients()[0];
    const double var = s.coefficients().tail(6).squaredNorm();
    CHECK(std::abs(mean - OdeModel::exact_mean(t)) <= 1e-3 * OdeModel::exact_mean(t));
    if (t > 0.0) CHECK(std::abs(var - OdeModel::exact_variance(t)) <= 1e-2 * OdeModel::exact_variance(t));
  }
}

TEST_CASE("models evaluate identically across worker counts") {
  const IshigamiModel ish;
  const SamplePool pool = sample_pool(ish.space(), 257, 3);
  const auto a = evaluate_points(ish, pool.points, true, 1);
  const auto b = evaluate_points(ish, pool.points, true, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].gradient == b[i].gradient);
  }
}

}
