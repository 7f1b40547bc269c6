#pragma once

#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "segpc/model.hpp"
#include "segpc/orthopoly.hpp"

namespace segpc {

struct FitReport {
  std::string method;                 // "segpc", "wlsq", "smolyak", "tensor"
  std::size_t n_points = 0;           // distinct model inputs used
  std::size_t n_equations = 0;        // rows of the solved system
  double residual_norm = 0.0;         // weighted least-squares residual (0 for projections)
  double cond_number = 0.0;           // of the weighted rectangular matrix (NaN for projections)
  std::size_t evaluation_count = 0;   // direct solves + adjoint solves spent
};

/// Fitted expansion sum_j c_j Psi_j over standard coordinates.
class PceSurrogate {
 public:
  PceSurrogate(ChaosBasis basis, Eigen::VectorXd coefficients, FitReport report = {});

  const ChaosBasis& basis() const { return basis_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  const FitReport& report() const { return report_; }
  std::size_t dim() const { return basis_.dim(); }

  double eval(std::span<const double> xi) const;
  Eigen::VectorXd eval_rows(const Eigen::MatrixXd& points) const;
  /// dM/dxi_k of the surrogate.
  Eigen::VectorXd grad(std::span<const double> xi) const;

 private:
  ChaosBasis basis_;
  Eigen::VectorXd coefficients_;
  FitReport report_;
};

/// Systems whose weighted matrix has a condition number above this are
/// reported as rank deficient.
inline constexpr double kRankConditionLimit = 1e12;

/// Minimizer of ||W^{1/2}(values - psi c)||_2 by Householder QR of W^{1/2} psi.
/// Throws InsufficientSamples with fewer than P+1 points and RankDeficient
/// when the weighted matrix is numerically singular.
PceSurrogate fit_wlsq(const ChaosBasis& basis, const Eigen::MatrixXd& points,
                      const Eigen::VectorXd& w_sqrt, const Eigen::VectorXd& values);

/// Value rows followed by one block of derivative rows per dimension; the
/// point weights repeat in every block.
struct AugmentedSystem {
  Eigen::VectorXd g;        // (1+m) n
  Eigen::MatrixXd phi;      // (1+m) n x (P+1)
  Eigen::VectorXd w_block;  // (1+m) n square-root weights
  std::size_t n_points = 0;
};

/// `gradients` is n x m in standard coordinates, or n x 0 for a value-only
/// system.
AugmentedSystem build_augmented(const ChaosBasis& basis, const Eigen::MatrixXd& points,
                                const Eigen::VectorXd& w_sqrt, const Eigen::VectorXd& values,
                                const Eigen::MatrixXd& gradients);

/// Weighted least-squares solve of an augmented system.
PceSurrogate solve_augmented(const ChaosBasis& basis, const AugmentedSystem& system,
                             std::string method = "segpc");

/// Gradient-enhanced fit. Uses the first segpc_point_count(P+1, m, ratio)
/// rows of `ranked_points` (highest-ranked first), evaluating the model value
/// and gradient there.
PceSurrogate fit_segpc(const ChaosBasis& basis, const Eigen::MatrixXd& ranked_points,
                       const Eigen::VectorXd& ranked_w_sqrt, const Model& model,
                       double oversampling = 1.0, std::size_t workers = 1);

/// Plain WLSQ fit on the first wlsq_point_count(P+1, ratio) ranked rows,
/// evaluating the model there.
PceSurrogate fit_wlsq_model(const ChaosBasis& basis, const Eigen::MatrixXd& ranked_points,
                            const Eigen::VectorXd& ranked_w_sqrt, const Model& model,
                            double oversampling = 1.0, std::size_t workers = 1);

}  // namespace segpc
