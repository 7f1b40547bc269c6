#include "segpc/regression.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "segpc/design.hpp"
#include "segpc/error.hpp"
#include "segpc/kernels.hpp"
#include "segpc/linalg.hpp"

namespace segpc {

PceSurrogate::PceSurrogate(ChaosBasis basis, Eigen::VectorXd coefficients, FitReport report)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)), report_(std::move(report)) {
  if (static_cast<std::size_t>(coefficients_.size()) != basis_.size()) {
    throw InvalidArgument("coefficient count " + std::to_string(coefficients_.size()) +
                          " does not match basis size " + std::to_string(basis_.size()));
  }
}

double PceSurrogate::eval(std::span<const double> xi) const {
  const Eigen::VectorXd row = basis_.eval(xi);
  return kernels::active().dot(row.data(), coefficients_.data(), basis_.size());
}

Eigen::VectorXd PceSurrogate::eval_rows(const Eigen::MatrixXd& points) const {
  return basis_.eval_expansion(points, coefficients_);
}

Eigen::VectorXd PceSurrogate::grad(std::span<const double> xi) const {
  return basis_.grad(xi) * coefficients_;
}

namespace {

std::string cond_text(double c) {
  std::ostringstream os;
  os.precision(3);
  os << c;
  return os.str();
}

// Scales rows by w, factors, checks conditioning and solves.
PceSurrogate weighted_solve(const ChaosBasis& basis, Eigen::MatrixXd a, const Eigen::VectorXd& w,
                            Eigen::VectorXd rhs, FitReport report) {
  const auto& kt = kernels::active();
  const std::size_t rows = static_cast<std::size_t>(a.rows());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    kt.multiply(a.col(j).data(), w.data(), a.col(j).data(), rows);
  }
  kt.multiply(rhs.data(), w.data(), rhs.data(), rows);

  const double cond = linalg::condition_number(a);
  if (!(cond <= kRankConditionLimit)) {
    throw RankDeficient("weighted system is numerically rank deficient (condition number " +
                            cond_text(cond) + ")",
                        cond);
  }
  const linalg::HouseholderQr qr(std::move(a));
  double residual = 0.0;
  Eigen::VectorXd c = qr.solve(rhs, &residual);
  report.n_equations = rows;
  report.residual_norm = residual;
  report.cond_number = cond;
  return PceSurrogate(basis, std::move(c), std::move(report));
}

void check_points(const ChaosBasis& basis, const Eigen::MatrixXd& points,
                  const Eigen::VectorXd& w_sqrt, const Eigen::VectorXd& values) {
  if (static_cast<std::size_t>(points.cols()) != basis.dim()) {
    throw InvalidArgument("point dimension does not match basis dimension");
  }
  if (w_sqrt.size() != points.rows() || values.size() != points.rows()) {
    throw InvalidArgument("points, weights and values must have the same length");
  }
}

}  // namespace

PceSurrogate fit_wlsq(const ChaosBasis& basis, const Eigen::MatrixXd& points,
                      const Eigen::VectorXd& w_sqrt, const Eigen::VectorXd& values) {
  check_points(basis, points, w_sqrt, values);
  if (static_cast<std::size_t>(points.rows()) < basis.size()) {
    throw InsufficientSamples(std::to_string(points.rows()) + " points for " +
                              std::to_string(basis.size()) + " unknowns");
  }
  FitReport report;
  report.method = "wlsq";
  report.n_points = static_cast<std::size_t>(points.rows());
  report.evaluation_count = report.n_points;
  return weighted_solve(basis, basis.eval_rows(points), w_sqrt, values, std::move(report));
}

AugmentedSystem build_augmented(const ChaosBasis& basis, const Eigen::MatrixXd& points,
                                const Eigen::VectorXd& w_sqrt, const Eigen::VectorXd& values,
                                const Eigen::MatrixXd& gradients) {
  check_points(basis, points, w_sqrt, values);
  const Eigen::Index n = points.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(basis.dim());
  if (gradients.rows() != n || (gradients.cols() != m && gradients.cols() != 0)) {
    throw InvalidArgument("gradient matrix must be n x m (or n x 0 for value-only rows)");
  }
  const Eigen::Index blocks = 1 + gradients.cols();
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());

  AugmentedSystem sys;
  sys.n_points = static_cast<std::size_t>(n);
  sys.g.resize(blocks * n);
  sys.phi.resize(blocks * n, cols);
  sys.w_block.resize(blocks * n);
  std::vector<double> xi(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) xi[static_cast<std::size_t>(k)] = points(i, k);
    sys.phi.row(i) = basis.eval(xi).transpose();
    sys.g[i] = values[i];
    if (blocks > 1) {
      const Eigen::MatrixXd d = basis.grad(xi);
      for (Eigen::Index k = 0; k < m; ++k) {
        sys.phi.row((1 + k) * n + i) = d.row(k);
        sys.g[(1 + k) * n + i] = gradients(i, k);
      }
    }
  }
  for (Eigen::Index b = 0; b < blocks; ++b) sys.w_block.segment(b * n, n) = w_sqrt;
  return sys;
}

PceSurrogate solve_augmented(const ChaosBasis& basis, const AugmentedSystem& system,
                             std::string method) {
  if (static_cast<std::size_t>(system.phi.rows()) < basis.size()) {
    throw InsufficientSamples(std::to_string(system.phi.rows()) + " equations for " +
                              std::to_string(basis.size()) + " unknowns");
  }
  FitReport report;
  report.method = std::move(method);
  report.n_points = system.n_points;
  return weighted_solve(basis, system.phi, system.w_block, system.g, std::move(report));
}

namespace {

Eigen::MatrixXd top_rows(const Eigen::MatrixXd& points, std::size_t n) {
  if (static_cast<std::size_t>(points.rows()) < n) {
    throw InsufficientSamples("design provides " + std::to_string(points.rows()) +
                              " ranked points, " + std::to_string(n) + " needed");
  }
  return points.topRows(static_cast<Eigen::Index>(n));
}

}  // namespace

PceSurrogate fit_segpc(const ChaosBasis& basis, const Eigen::MatrixXd& ranked_points,
                       const Eigen::VectorXd& ranked_w_sqrt, const Model& model,
                       double oversampling, std::size_t workers) {
  if (!model.has_gradient()) {
    throw UnsupportedModel("se-gPC needs gradients, model '" + model.name() +
                           "' does not provide them");
  }
  if (model.dim() != basis.dim()) throw InvalidArgument("model and basis dimensions differ");
  const std::size_t n = segpc_point_count(basis.size(), basis.dim(), oversampling);
  const Eigen::MatrixXd pts = top_rows(ranked_points, n);
  if (ranked_w_sqrt.size() < static_cast<Eigen::Index>(n)) {
    throw InvalidArgument("fewer weights than ranked points");
  }
  const auto evals = evaluate_points(model, pts, true, workers);

  Eigen::VectorXd values(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd grads(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(basis.dim()));
  std::size_t cost = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    values[row] = evals[i].value;
    for (std::size_t k = 0; k < basis.dim(); ++k) {
      grads(row, static_cast<Eigen::Index>(k)) = evals[i].gradient[k];
    }
    cost += static_cast<std::size_t>(evals[i].cost_units);
  }
  const AugmentedSystem sys =
      build_augmented(basis, pts, ranked_w_sqrt.head(static_cast<Eigen::Index>(n)), values, grads);
  PceSurrogate fit = solve_augmented(basis, sys, "segpc");
  FitReport report = fit.report();
  report.evaluation_count = cost;
  return PceSurrogate(basis, fit.coefficients(), std::move(report));
}

PceSurrogate fit_wlsq_model(const ChaosBasis& basis, const Eigen::MatrixXd& ranked_points,
                            const Eigen::VectorXd& ranked_w_sqrt, const Model& model,
                            double oversampling, std::size_t workers) {
  if (model.dim() != basis.dim()) throw InvalidArgument("model and basis dimensions differ");
  const std::size_t n = wlsq_point_count(basis.size(), oversampling);
  const Eigen::MatrixXd pts = top_rows(ranked_points, n);
  if (ranked_w_sqrt.size() < static_cast<Eigen::Index>(n)) {
    throw InvalidArgument("fewer weights than ranked points");
  }
  const auto evals = evaluate_points(model, pts, false, workers);
  Eigen::VectorXd values(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) values[static_cast<Eigen::Index>(i)] = evals[i].value;
  return fit_wlsq(basis, pts, ranked_w_sqrt.head(static_cast<Eigen::Index>(n)), values);
}

}  // namespace segpc
