#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "segpc/stochastic_space.hpp"

namespace segpc {

/// QoI value and, when requested, its gradient in standardized coordinates.
/// cost_units is 1 for a value-only evaluation and 2 for value plus one
/// adjoint (or analytic-gradient) solve.
struct ModelEvaluation {
  double value = 0.0;
  std::vector<double> gradient;
  int cost_units = 1;
};

/// Physical-coordinate result returned by concrete models.
struct PhysicalEvaluation {
  double value = 0.0;
  std::vector<double> gradient;  // dM/dx_k, empty if not requested
};

/// The QoI contract. A model owns the input space it is defined over and
/// is evaluated at physical coordinates; `evaluate` maps a standardized
/// point through the space and chain-rules the gradient back:
/// dM/dxi_k = dM/dx_k * dx_k/dxi_k.
///
/// Implementations must be safe to call concurrently from several threads.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual const StochasticSpace& space() const = 0;
  virtual bool has_gradient() const = 0;
  virtual PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                               bool with_gradient) const = 0;

  std::size_t dim() const { return space().dim(); }
  ModelEvaluation evaluate(std::span<const double> xi, bool with_gradient) const;
};

/// Evaluate `model` at every row of `points` (standard coordinates) using up
/// to `workers` threads. Results are stored by row index, so the output does
/// not depend on the worker count.
std::vector<ModelEvaluation> evaluate_points(const Model& model, const Eigen::MatrixXd& points,
                                             bool with_gradient, std::size_t workers = 1);

/// Run body(i) for i in [0, n) on up to `workers` threads (dynamic chunking).
/// The first exception thrown by any task is rethrown on the caller.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Model defined by plain callables over physical coordinates of a given
/// space; handy for synthetic QoIs and tests. The gradient callable, when
/// present, returns dM/dx.
class FunctionModel : public Model {
 public:
  using Value = std::function<double(std::span<const double>)>;
  using Gradient = std::function<std::vector<double>(std::span<const double>)>;

  FunctionModel(std::string name, StochasticSpace space, Value value, Gradient gradient = {});

  std::string name() const override { return name_; }
  const StochasticSpace& space() const override { return space_; }
  bool has_gradient() const override { return static_cast<bool>(gradient_); }
  PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                       bool with_gradient) const override;

 private:
  std::string name_;
  StochasticSpace space_;
  Value value_;
  Gradient gradient_;
};

}  // namespace segpc
