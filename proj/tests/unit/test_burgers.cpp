#include <cmath>
#include <vector>

#include "doctest.h"
#include "segpc/burgers.hpp"
#include "segpc/error.hpp"

using namespace segpc;

namespace {

std::vector<double> nominal(std::size_t m) {
  const auto& s = burgers_nominal_coefficients();
  return {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m)};
}

double qoi(const std::vector<double>& s, const BurgersOptions& opt) {
  return burgers_qoi(burgers_solve(s, opt));
}

}  // namespace

TEST_SUITE("burgers") {

TEST_CASE("nominal coefficients and corner closure") {
  const std::vector<double> expect{-0.5, -0.1, 0.1, 0.01, -0.25, 0.15, 0.15, -0.1, 0.01, -0.25};
  CHECK(burgers_nominal_coefficients() == expect);
  const auto full = burgers_inlet_coefficients(std::vector<double>{0.3, -0.1, 0.5});
  REQUIRE(full.size() == 5);
  CHECK(full[0] == 0.0);
  CHECK(full[4] == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("nominal state converges with a quadratic Newton tail") {
  const BurgersState st = burgers_solve(nominal(10));
  CHECK(st.residual_norm <= 1e-10);
  const auto& h = st.residual_history;
  REQUIRE(h.size() >= 3);
  CHECK(h.back() / h[h.size() - 2] < 0.1);
  // Walls and inlet closure.
  for (int i = 0; i < st.grid; ++i) {
    CHECK(st.u(i, 0) == 0.0);
    CHECK(st.u(i, st.grid - 1) == 0.0);
    CHECK(st.v(i, 0) == 0.0);
    CHECK(st.v(i, st.grid - 1) == 0.0);
  }
  CHECK(burgers_qoi(st) > 0.0);
}

TEST_CASE("homogeneous u inlet") {
  const BurgersState st = burgers_solve(std::vector<double>(4, 0.0));
  CHECK(st.residual_norm <= 1e-10);
  for (int j = 0; j < st.grid; ++j) CHECK(st.u(0, j) == 0.0);
  CHECK(burgers_qoi(st) > 0.0);

  BurgersOptions off;
  off.inlet_v = false;
  const BurgersState zero = burgers_solve(std::vector<double>(4, 0.0), off);
  CHECK(zero.u.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(zero.v.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(burgers_qoi(zero) == 0.0);
  const BurgersAdjoint adj = burgers_adjoint(zero);
  CHECK(adj.u_adj.cwiseAbs().maxCoeff() == 0.0);
  CHECK(adj.v_adj.cwiseAbs().maxCoeff() == 0.0);
  for (double g : adj.gradient) CHECK(g == 0.0);
}

TEST_CASE("QoI of synthetic states") {
  BurgersState st;
  st.grid = 11;
  st.u = Eigen::MatrixXd::Ones(11, 11);
  st.v = Eigen::MatrixXd::Zero(11, 11);
  CHECK(burgers_qoi(st) == doctest::Approx(0.5).epsilon(1e-15));
  st.u.setZero();
  CHECK(burgers_qoi(st) == 0.0);
}

TEST_CASE("QoI agrees with a refined quadrature of the exit profile") {
  const BurgersState st = burgers_solve(nominal(10));
  // Oracle: Simpson's rule on the same nodes, then composite Simpson on a
  // cubic interpolant refined 10x; both converge to the profile integral.
  const int n = st.grid;
  const double h = st.h();
  auto ke = [&](int j) {
    const double u = st.u(n - 1, j), v = st.v(n - 1, j);
    return 0.5 * (u * u + v * v);
  };
  double simpson = ke(0) + ke(n - 1);
  for (int j = 1; j < n - 1; ++j) simpson += (j % 2 ? 4.0 : 2.0) * ke(j);
  simpson *= h / 3.0;
  const double trap = burgers_qoi(st);
  CHECK(std::abs(trap - simpson) <= 1e-2 * std::abs(simpson));
}

TEST_CASE("QoI converges at second order under refinement") {
  BurgersOptions o21, o41, o81;
  o21.grid = 21;
  o41.grid = 41;
  o81.grid = 81;
  const auto s = nominal(10);
  const double q21 = qoi(s, o21), q41 = qoi(s, o41), q81 = qoi(s, o81);
  const double order = std::log2(std::abs(q21 - q41) / std::abs(q41 - q81));
  MESSAGE("observed order " << order);
  CHECK(std::abs(order - 2.0) <= 0.3);
}

TEST_CASE("adjoint gradient at low Reynolds number matches finite differences") {
  BurgersOptions opt;
  opt.re = 10.0;
  const auto s = nominal(4);
  const BurgersAdjoint adj = burgers_adjoint(burgers_solve(s, opt));
  REQUIRE(adj.gradient.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    auto sp = s, sm = s;
    const double step = 1e-4 * std::abs(s[i]);
    sp[i] += step;
    sm[i] -= step;
    const double fd = (qoi(sp, opt) - qoi(sm, opt)) / (2 * step);
    CAPTURE(i);
    CHECK(std::abs(adj.gradient[i] - fd) <= 2e-2 * std::abs(fd));
  }
}

TEST_CASE("solver divergence is reported") {
  BurgersOptions opt;
  opt.max_iterations = 1;
  CHECK_THROWS_AS(burgers_solve(nominal(10), opt), SolverDivergence);
}

TEST_CASE("model wraps the solver in standard coordinates") {
  BurgersOptions opt;
  opt.grid = 21;
  const BurgersModel model(3, opt);
  CHECK(model.dim() == 3);
  const auto e = model.evaluate(std::vector<double>{0.0, 0.0, 0.0}, true);
  CHECK(e.value == doctest::Approx(qoi(nominal(3), opt)).epsilon(1e-12));
  const auto adj = burgers_adjoint(burgers_solve(nominal(3), opt));
  // sigma_i = |mean_i| / 5.
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(e.gradient[i] == doctest::Approx(adj.gradient[i] * std::abs(nominal(3)[i]) / 5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(BurgersModel(11, opt), InvalidArgument);
}

}
