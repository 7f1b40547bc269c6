#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace segpc::linalg {

/// Householder QR of a tall column-major matrix (rows >= cols), without
/// pivoting. Used for the least-squares solves; never forms A^T A.
class HouseholderQr {
 public:
  explicit HouseholderQr(Eigen::MatrixXd a);

  Eigen::Index rows() const { return qr_.rows(); }
  Eigen::Index cols() const { return qr_.cols(); }

  /// Minimizer of ||A x - b||_2. `residual_norm`, when given, receives the
  /// norm of the least-squares residual.
  Eigen::VectorXd solve(const Eigen::VectorXd& b, double* residual_norm = nullptr) const;

  /// Upper-triangular factor (cols x cols).
  Eigen::MatrixXd r() const;

  /// Q^T b (length rows).
  Eigen::VectorXd apply_qt(Eigen::VectorXd b) const;

 private:
  Eigen::MatrixXd qr_;  // R above the diagonal, Householder vectors below
  Eigen::VectorXd tau_;
  Eigen::VectorXd r_diag_;
};

/// Greedy column-pivoted Householder QR of the wide matrix A = B^T, where B
/// is given column-major (so each row of A is a contiguous column of B).
/// At every step the remaining column of A with the largest trailing norm
/// is moved to the front; ties go to the lowest original column index.
///
/// The factorization stops after `max_steps` pivots (or min(rows, cols)).
class PivotedQr {
 public:
  PivotedQr(const Eigen::MatrixXd& b_transposed, std::size_t max_steps);

  std::size_t steps() const { return steps_; }

  /// Original column indices of A in pivot order; the first `steps()` are
  /// the selected columns, the rest follow in their final positions.
  const std::vector<std::size_t>& permutation() const { return perm_; }

  /// |R_kk| for k < steps(), non-increasing.
  const std::vector<double>& r_diag() const { return r_diag_; }

  /// R factor (rows(A) x cols(A)); rows below steps() hold the
  /// unfactored trailing block when the factorization stopped early.
  Eigen::MatrixXd r() const;

  /// Orthogonal factor (rows(A) x rows(A)) accumulated from the reflectors.
  Eigen::MatrixXd q() const;

 private:
  Eigen::MatrixXd work_;  // B with rows permuted: work_(j, i) == (A P)(i, j)
  std::vector<Eigen::VectorXd> reflectors_;
  std::vector<double> taus_;
  std::vector<std::size_t> perm_;
  std::vector<double> r_diag_;
  std::size_t steps_ = 0;
};

/// Ratio of extreme singular values; +inf when the smallest is zero.
double condition_number(const Eigen::MatrixXd& a);

}  // namespace segpc::linalg
