#pragma once

// Steady 2D viscous Burgers flow on [0,1]^2 with an uncertain polynomial inlet
// profile, its exit kinetic-energy QoI, and the continuous adjoint that gives
// the QoI sensitivities to every inlet coefficient in one linear solve.
//
// Boundary conditions: u = v = 0 on the walls y = 0 and y = 1; at the inlet
// u(0,y) = sum_i s_i y^i (degree m+1, s_0 = 0, s_{m+1} = -sum_{i=1..m} s_i so
// the inlet corners vanish) and v(0,y) = y^2 - y^3; zero normal derivative
// of u and v at the exit x = 1.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "segpc/model.hpp"

namespace segpc {

struct BurgersOptions {
  int grid = 31;              // nodes per direction, N >= 5
  double re = 250.0;
  double tolerance = 1e-10;   // residual infinity norm at convergence
  int max_iterations = 80;
  bool inlet_v = true;        // false: v(0,y) = 0 (homogeneous test case)
};

/// Converged (or synthetic) flow state. u(i, j) is the node x = i h, y = j h.
struct BurgersState {
  int grid = 0;
  double re = 0.0;
  std::vector<double> s;      // s_0 .. s_{m+1}
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  double residual_norm = 0.0;
  std::vector<double> residual_history;  // one entry per nonlinear iterate, incl. the initial guess
  int iterations = 0;

  double h() const { return 1.0 / (grid - 1); }
};

struct BurgersAdjoint {
  Eigen::MatrixXd u_adj;
  Eigen::MatrixXd v_adj;
  /// d k_e / d s_j for j = 0 .. m+1 treating every inlet coefficient as
  /// independent.
  std::vector<double> partial_gradient;
  /// Total derivative with respect to the free coefficients s_1 .. s_m, with
  /// s_{m+1} = -sum s_i folded in.
  std::vector<double> gradient;
};

/// Full inlet coefficient vector s_0 .. s_{m+1} from the m free ones.
std::vector<double> burgers_inlet_coefficients(std::span<const double> free_s);

/// Damped Newton with Picard fallback on the second-order central-difference
/// discretization. Throws SolverDivergence if the residual does not reach
/// the tolerance within max_iterations.
BurgersState burgers_solve(std::span<const double> free_s, const BurgersOptions& options = {});

/// k_e = 1/2 int_0^1 (u^2 + v^2)|_{x=1} dy, trapezoidal rule on the exit nodes.
double burgers_qoi(const BurgersState& state);

/// Continuous adjoint fields and sensitivities. Throws AdjointSolveError if
/// the linear system cannot be factorized.
BurgersAdjoint burgers_adjoint(const BurgersState& state);

/// Nominal free inlet coefficient means s_1..s_10.
const std::vector<double>& burgers_nominal_coefficients();

/// QoI model over s_i ~ N(mean_i, (|mean_i|/5)^2), i = 1..m, with the first m
/// nominal means (m <= 10 unless explicit means are supplied).
class BurgersModel : public Model {
 public:
  explicit BurgersModel(std::size_t m = 10, BurgersOptions options = {});
  BurgersModel(std::vector<double> means, BurgersOptions options);

  std::string name() const override { return "burgers"; }
  const StochasticSpace& space() const override { return space_; }
  bool has_gradient() const override { return true; }
  PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                       bool with_gradient) const override;

  const BurgersOptions& options() const { return options_; }

 private:
  BurgersOptions options_;
  StochasticSpace space_;
};

}  // namespace segpc
