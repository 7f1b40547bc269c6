#include "segpc/models.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "segpc/error.hpp"

namespace segpc {

OdeModel::OdeModel(double t)
    : t_(t), space_({Marginal(UniformMarginal{0.0, 1.0})}) {
  if (!(t >= 0.0)) throw InvalidArgument("ODE time must be non-negative");
}

PhysicalEvaluation OdeModel::evaluate_physical(std::span<const double> x,
                                               bool with_gradient) const {
  const double u = std::exp(-x[0] * t_);
  PhysicalEvaluation out{u, {}};
  if (with_gradient) out.gradient = {-t_ * u};
  return out;
}

double OdeModel::exact_mean(double t) {
  if (t == 0.0) return 1.0;
  return -std::expm1(-t) / t;
}

double OdeModel::exact_variance(double t) {
  if (t == 0.0) return 0.0;
  const double m = exact_mean(t);
  return -std::expm1(-2.0 * t) / (2.0 * t) - m * m;
}

IshigamiModel::IshigamiModel(double alpha, double beta)
    : alpha_(alpha),
      beta_(beta),
      space_(StochasticSpace::iid(3, Marginal(UniformMarginal{-std::numbers::pi, std::numbers::pi}))) {}

PhysicalEvaluation IshigamiModel::evaluate_physical(std::span<const double> x,
                                                    bool with_gradient) const {
  const double s1 = std::sin(x[0]);
  const double s2 = std::sin(x[1]);
  const double x3_2 = x[2] * x[2];
  const double x3_4 = x3_2 * x3_2;
  PhysicalEvaluation out;
  out.value = s1 + alpha_ * s2 * s2 + beta_ * x3_4 * s1;
  if (with_gradient) {
    out.gradient = {std::cos(x[0]) * (1.0 + beta_ * x3_4),
                    2.0 * alpha_ * s2 * std::cos(x[1]),
                    4.0 * beta_ * x3_2 * x[2] * s1};
  }
  return out;
}

double IshigamiModel::exact_mean() const { return 0.5 * alpha_; }

double IshigamiModel::exact_variance() const {
  const double pi4 = std::pow(std::numbers::pi, 4);
  const double pi8 = pi4 * pi4;
  return alpha_ * alpha_ / 8.0 + beta_ * pi4 / 5.0 + beta_ * beta_ * pi8 / 18.0 + 0.5;
}

std::array<double, 3> IshigamiModel::exact_total_sobol() const {
  const double pi4 = std::pow(std::numbers::pi, 4);
  const double pi8 = pi4 * pi4;
  const double v1 = 0.5 * std::pow(1.0 + beta_ * pi4 / 5.0, 2);
  const double v2 = alpha_ * alpha_ / 8.0;
  const double v13 = beta_ * beta_ * pi8 * (1.0 / 18.0 - 1.0 / 50.0);
  const double v = exact_variance();
  return {(v1 + v13) / v, v2 / v, v13 / v};
}

}  // namespace segpc
