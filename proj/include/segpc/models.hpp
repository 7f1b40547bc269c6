#pragma once

#include <array>
#include <span>
#include <string>

#include "segpc/model.hpp"

namespace segpc {

/// u(t; k) = exp(-k t) for du/dt = -k u, u(0) = 1, with k ~ U(0, 1).
class OdeModel : public Model {
 public:
  explicit OdeModel(double t);

  std::string name() const override { return "ode"; }
  const StochasticSpace& space() const override { return space_; }
  bool has_gradient() const override { return true; }
  PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                       bool with_gradient) const override;

  double t() const { return t_; }

  /// Closed-form E[u(t)] = (1 - e^{-t}) / t (1 at t = 0).
  static double exact_mean(double t);
  /// Closed-form Var[u(t)] = (1 - e^{-2t}) / (2t) - ((1 - e^{-t}) / t)^2.
  static double exact_variance(double t);

 private:
  double t_;
  StochasticSpace space_;
};

/// Y = sin X1 + alpha sin^2 X2 + beta X3^4 sin X1 with X_i ~ U(-pi, pi).
class IshigamiModel : public Model {
 public:
  explicit IshigamiModel(double alpha = 7.0, double beta = 0.1);

  std::string name() const override { return "ishigami"; }
  const StochasticSpace& space() const override { return space_; }
  bool has_gradient() const override { return true; }
  PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                       bool with_gradient) const override;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double exact_mean() const;
  double exact_variance() const;
  /// Closed-form total Sobol indices (S1T, S2T, S3T).
  std::array<double, 3> exact_total_sobol() const;

 private:
  double alpha_;
  double beta_;
  StochasticSpace space_;
};

}  // namespace segpc
