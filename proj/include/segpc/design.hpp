#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "segpc/orthopoly.hpp"
#include "segpc/stochastic_space.hpp"

namespace segpc {

/// Square-root weights w^{1/2}(xi) per pool point. Gaussian coordinates
/// contribute exp(-|xi_G|^2 / 4) (norm over the Gaussian coordinates only);
/// uniform coordinates contribute (1 - xi_k^2)^{1/4}. A uniform coordinate at
/// exactly +-1 yields weight 0; beyond that is an InvalidArgument.
Eigen::VectorXd coherence_weights(const StochasticSpace& space, const Eigen::MatrixXd& points);

/// Unscaled measurement matrix psi (q x (P+1)) and the square-root weights
/// that go with it. Weights are applied only at selection/solve time.
struct WeightedMeasurement {
  Eigen::MatrixXd psi;
  Eigen::VectorXd w_sqrt;
  std::uint64_t pool_seed = 0;

  std::size_t rows() const { return static_cast<std::size_t>(psi.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(psi.cols()); }

  /// W^{1/2} psi
  Eigen::MatrixXd weighted() const;
};

WeightedMeasurement build_measurement(const ChaosBasis& basis, const SamplePool& pool,
                                      const Eigen::VectorXd& w_sqrt);

/// Greedy D-optimal selection: pool rows ranked by column-pivoted QR of
/// (W^{1/2} psi)^T.
struct DesignPlan {
  std::vector<std::size_t> selected;  // pool row indices, pivot order
  std::vector<double> r_diag;         // |R_kk|, non-increasing
  double cond_number = 0.0;           // set when selected.size() == P+1, else NaN
};

/// Throws RankDeficientPool when a pivot drops below 1e-12 |R_11| before
/// `n_sel` points are found.
DesignPlan qr_select(const WeightedMeasurement& meas, std::size_t n_sel);

/// Selection for oversampled fits that need more than P+1 points: repeated
/// rounds of qr_select over the rows not yet chosen, concatenated.
std::vector<std::size_t> ranked_points(const WeightedMeasurement& meas, std::size_t n_total);

struct ConditionDiagnostics {
  double cond_number;
  double det_magnitude;  // prod |R_kk|
};

ConditionDiagnostics condition_diagnostics(const WeightedMeasurement& meas,
                                           const DesignPlan& plan);

/// Number of se-gPC points for an oversampling ratio: ceil(ratio (P+1) / (m+1)).
std::size_t segpc_point_count(std::size_t basis_size, std::size_t m, double oversampling = 1.0);

/// Number of WLSQ points: ceil(ratio (P+1)).
std::size_t wlsq_point_count(std::size_t basis_size, double oversampling = 1.0);

/// Pool, weights and ranking in one step: draws a seeded pool of q points,
/// weights it, and ranks `n_points` rows by pivoted QR (qr_select when
/// n_points <= P+1, ranked_points beyond that).
struct RankedDesign {
  SamplePool pool;
  std::vector<std::size_t> rows;  // pool rows in rank order
  Eigen::MatrixXd points;         // the ranked rows of the pool
  Eigen::VectorXd w_sqrt;         // their square-root weights
  std::vector<double> r_diag;     // |R_kk| of the first qr_select round
  double cond_number = 0.0;       // NaN unless the first round selected P+1 points
};

RankedDesign rank_design(const StochasticSpace& space, const ChaosBasis& basis, std::size_t q,
                         std::uint64_t seed, std::size_t n_points);

/// Rows of `points` listed in `rows`, in that order.
Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& points, const std::vector<std::size_t>& rows);
Eigen::VectorXd gather(const Eigen::VectorXd& values, const std::vector<std::size_t>& rows);

}  // namespace segpc
