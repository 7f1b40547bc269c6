#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "segpc/model.hpp"
#include "segpc/orthopoly.hpp"
#include "segpc/regression.hpp"

namespace segpc {

/// One-dimensional rule against the probability measure of a family
/// (weights sum to one).
struct GaussRule {
  Eigen::VectorXd nodes;    // ascending
  Eigen::VectorXd weights;
};

/// Golub-Welsch: eigenvalues of the symmetric Jacobi matrix of the
/// orthonormal recurrence are the nodes; squared first eigenvector entries
/// are the weights.
GaussRule gauss_rule(PolyFamily family, std::size_t n_points);

struct QuadratureRule {
  Eigen::MatrixXd nodes;    // n x m, standard coordinates
  Eigen::VectorXd weights;  // n, may be negative for Smolyak
  std::string kind;         // "tensor" or "smolyak"
  std::size_t level = 0;    // points per dimension (tensor) or Smolyak level

  std::size_t size() const { return static_cast<std::size_t>(nodes.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(nodes.cols()); }
};

/// Upper bound on nodes produced by tensor and Smolyak constructions.
inline constexpr std::size_t kMaxRuleNodes = std::size_t{1} << 24;

QuadratureRule tensor_rule(const std::vector<PolyFamily>& families, std::size_t points_per_dim);

/// Combination-formula Smolyak rule over Gauss rules with 2l-1 points at
/// level l. Coincident nodes (coordinates equal after rounding to 1e-12)
/// are merged and their weights summed. Nodes whose merged weight cancels
/// (the origin at level 2 for m = 3, say) are kept. Throws SizeError when the unmerged node count
/// would exceed kMaxRuleNodes.
QuadratureRule smolyak_rule(const std::vector<PolyFamily>& families, std::size_t level);

/// Merge coincident nodes (same rounding as smolyak_rule). Idempotent.
QuadratureRule merge_nodes(const QuadratureRule& rule);

/// Non-intrusive projection c_i = sum_n w_n M(xi_n) Psi_i(xi_n).
PceSurrogate quadrature_fit(const ChaosBasis& basis, const QuadratureRule& rule,
                            const Model& model, std::size_t workers = 1);

/// Same projection for values already computed at the rule nodes.
Eigen::VectorXd project(const ChaosBasis& basis, const QuadratureRule& rule,
                        const Eigen::VectorXd& values);

struct QuadratureMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
};

/// Moments of the model itself integrated with a (positive-weight) rule;
/// used for reference values of cheap smooth models.
QuadratureMoments quadrature_moments(const Model& model, const QuadratureRule& rule,
                                     std::size_t workers = 1);

struct MonteCarloResult {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;                 // unbiased
  double std = 0.0;
  std::optional<double> skewness;        // empty when the variance is zero
  std::optional<double> kurtosis;        // non-excess; empty when the variance is zero
  double mean_standard_error = 0.0;
  std::vector<double> trace;             // per-sample values when requested
};

/// Single-pass moment accumulator (Welford for the mean and M2, Terriberry's
/// update for M3 and M4). Skewness and kurtosis are the population ratios
/// m3 / m2^{3/2} and m4 / m2^2.
class MomentAccumulator {
 public:
  void add(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased variance; 0 for fewer than two samples.
  double variance() const;
  std::optional<double> skewness() const;
  std::optional<double> kurtosis() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

/// Seeded Monte Carlo over the model's standard space. All n points come
/// from one sequential stream (sample_pool with `seed`) and are evaluated in
/// parallel, then accumulated in index order, so the result is independent
/// of `workers`. Throws InvalidArgument for n < 2.
MonteCarloResult monte_carlo_moments(const Model& model, std::size_t n, std::uint64_t seed,
                                     std::size_t workers = 1, bool keep_trace = false);

}  // namespace segpc
