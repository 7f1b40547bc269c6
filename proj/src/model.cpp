#include "segpc/model.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "segpc/error.hpp"

namespace segpc {

ModelEvaluation Model::evaluate(std::span<const double> xi, bool with_gradient) const {
  if (with_gradient && !has_gradient()) {
    throw UnsupportedModel("model '" + name() + "' does not provide gradients");
  }
  const auto& sp = space();
  const std::vector<double> x = sp.destandardize(xi);
  PhysicalEvaluation phys = evaluate_physical(x, with_gradient);
  ModelEvaluation out;
  out.value = phys.value;
  out.cost_units = with_gradient ? 2 : 1;
  if (with_gradient) {
    if (phys.gradient.size() != sp.dim()) {
      throw InvalidArgument("model '" + name() + "' returned a gradient of length " +
                            std::to_string(phys.gradient.size()) + ", expected " +
                            std::to_string(sp.dim()));
    }
    out.gradient.resize(sp.dim());
    for (std::size_t k = 0; k < sp.dim(); ++k) {
      out.gradient[k] = phys.gradient[k] * sp.marginal(k).scale();
    }
  }
  return out;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<ModelEvaluation> evaluate_points(const Model& model, const Eigen::MatrixXd& points,
                                             bool with_gradient, std::size_t workers) {
  if (static_cast<std::size_t>(points.cols()) != model.dim()) {
    throw InvalidArgument("point dimension does not match model '" + model.name() + "'");
  }
  std::vector<ModelEvaluation> out(static_cast<std::size_t>(points.rows()));
  parallel_for(out.size(), workers, [&](std::size_t i) {
    std::vector<double> xi(model.dim());
    for (std::size_t k = 0; k < xi.size(); ++k) {
      xi[k] = points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
    out[i] = model.evaluate(xi, with_gradient);
  });
  return out;
}

FunctionModel::FunctionModel(std::string name, StochasticSpace space, Value value,
                             Gradient gradient)
    : name_(std::move(name)),
      space_(std::move(space)),
      value_(std::move(value)),
      gradient_(std::move(gradient)) {
  if (!value_) throw InvalidArgument("function model needs a value callable");
}

PhysicalEvaluation FunctionModel::evaluate_physical(std::span<const double> x,
                                                    bool with_gradient) const {
  PhysicalEvaluation out;
  out.value = value_(x);
  if (with_gradient) {
    if (!gradient_) throw UnsupportedModel("model '" + name_ + "' does not provide gradients");
    out.gradient = gradient_(x);
  }
  return out;
}

}  // namespace segpc
