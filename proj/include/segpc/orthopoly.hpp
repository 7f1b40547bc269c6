#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "segpc/stochastic_space.hpp"

namespace segpc {

/// Orthonormal polynomial families. Hermite is the probabilists' family
/// normalized against the standard normal density; Legendre is normalized
/// against the uniform density 1/2 on [-1, 1]. Leading coefficients are
/// positive.
enum class PolyFamily { Hermite, Legendre };

PolyFamily family_for(MarginalKind kind);
const char* to_string(PolyFamily family);

struct PolyValue {
  double value;
  double derivative;
};

/// psi_n(x) and psi_n'(x) via the normalized three-term recurrence.
PolyValue univariate_eval(PolyFamily family, int degree, double x);

/// psi_0..psi_n at x (and derivatives) in one recurrence sweep.
void univariate_table(PolyFamily family, int max_degree, double x, std::span<double> values,
                      std::span<double> derivatives);

/// (p+m)! / (p! m!), throwing SizeError if it exceeds `limit`.
std::size_t index_set_size(std::size_t m, std::size_t p,
                           std::size_t limit = std::size_t{1} << 26);

/// Total-degree multi-indices with |alpha|_1 <= p. Ordered by total degree,
/// and within one degree lexicographically descending (so for m = 2 the
/// degree-2 block is (2,0), (1,1), (0,2)). indices()[0] is the zero tuple
/// and indices()[1 + k] is the linear term in dimension k.
class MultiIndexSet {
 public:
  MultiIndexSet(std::size_t m, std::size_t p);

  std::size_t dim() const { return m_; }
  std::size_t order() const { return p_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<std::vector<int>>& indices() const { return indices_; }
  const std::vector<int>& operator[](std::size_t j) const { return indices_[j]; }
  int total_degree(std::size_t j) const;

 private:
  std::size_t m_;
  std::size_t p_;
  std::vector<std::vector<int>> indices_;
};

inline MultiIndexSet build_index_set(std::size_t m, std::size_t p) { return MultiIndexSet(m, p); }

/// Tensor-product orthonormal basis over a total-degree index set.
class ChaosBasis {
 public:
  ChaosBasis(std::vector<PolyFamily> families, std::size_t order);
  ChaosBasis(const StochasticSpace& space, std::size_t order);

  std::size_t dim() const { return families_.size(); }
  std::size_t order() const { return index_set_.order(); }
  /// P + 1
  std::size_t size() const { return index_set_.size(); }
  const std::vector<PolyFamily>& families() const { return families_; }
  const MultiIndexSet& index_set() const { return index_set_; }

  /// Row of Psi_j(xi), j = 0..P.
  Eigen::VectorXd eval(std::span<const double> xi) const;
  void eval_into(std::span<const double> xi, std::span<double> out) const;

  /// m x (P+1) matrix of dPsi_j / dxi_k.
  Eigen::MatrixXd grad(std::span<const double> xi) const;

  /// q x (P+1) measurement matrix for the rows of `points`.
  Eigen::MatrixXd eval_rows(const Eigen::MatrixXd& points) const;

  /// Surrogate values sum_j c_j Psi_j at each row of `points`.
  Eigen::VectorXd eval_expansion(const Eigen::MatrixXd& points,
                                 const Eigen::VectorXd& coefficients) const;

 private:
  void tables(std::span<const double> xi, std::vector<double>& values,
              std::vector<double>* derivatives) const;

  std::vector<PolyFamily> families_;
  MultiIndexSet index_set_;
};

}  // namespace segpc
