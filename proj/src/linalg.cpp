#include "segpc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "segpc/error.hpp"
#include "segpc/kernels.hpp"

namespace segpc::linalg {
namespace {

// Builds the reflector H = I - tau v v^T with H x = alpha e_0 in place:
// x becomes v (v_0 is not normalized to one). Returns alpha.
double make_reflector(std::span<double> x, double& tau) {
  const auto& k = kernels::active();
  const double norm = std::sqrt(k.sum_squares(x.data(), x.size()));
  if (norm == 0.0) {
    tau = 0.0;
    return 0.0;
  }
  const double alpha = x[0] > 0.0 ? -norm : norm;
  x[0] -= alpha;
  const double vnorm2 = k.sum_squares(x.data(), x.size());
  tau = vnorm2 > 0.0 ? 2.0 / vnorm2 : 0.0;
  return alpha;
}

}  // namespace

HouseholderQr::HouseholderQr(Eigen::MatrixXd a) : qr_(std::move(a)) {
  const Eigen::Index n = qr_.rows();
  const Eigen::Index k = qr_.cols();
  if (n < k) throw InvalidArgument("HouseholderQr needs rows >= cols");
  tau_.resize(k);
  r_diag_.resize(k);
  const auto& kt = kernels::active();
  for (Eigen::Index j = 0; j < k; ++j) {
    const std::size_t len = static_cast<std::size_t>(n - j);
    double* v = qr_.col(j).data() + j;
    double tau = 0.0;
    r_diag_[j] = make_reflector({v, len}, tau);
    tau_[j] = tau;
    if (tau == 0.0) continue;
    for (Eigen::Index l = j + 1; l < k; ++l) {
      double* c = qr_.col(l).data() + j;
      const double s = kt.dot(v, c, len);
      kt.axpy(-tau * s, v, c, len);
    }
  }
}

Eigen::VectorXd HouseholderQr::apply_qt(Eigen::VectorXd b) const {
  if (b.size() != qr_.rows()) throw InvalidArgument("right-hand side length mismatch");
  const auto& kt = kernels::active();
  const Eigen::Index n = qr_.rows();
  for (Eigen::Index j = 0; j < qr_.cols(); ++j) {
    if (tau_[j] == 0.0) continue;
    const std::size_t len = static_cast<std::size_t>(n - j);
    const double* v = qr_.col(j).data() + j;
    double* c = b.data() + j;
    const double s = kt.dot(v, c, len);
    kt.axpy(-tau_[j] * s, v, c, len);
  }
  return b;
}

Eigen::VectorXd HouseholderQr::solve(const Eigen::VectorXd& b, double* residual_norm) const {
  const Eigen::Index k = qr_.cols();
  const Eigen::VectorXd qtb = apply_qt(b);
  Eigen::VectorXd x(k);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    double s = qtb[i];
    for (Eigen::Index l = i + 1; l < k; ++l) s -= qr_(i, l) * x[l];
    x[i] = s / r_diag_[i];
  }
  if (residual_norm) *residual_norm = qtb.tail(qr_.rows() - k).norm();
  return x;
}

Eigen::MatrixXd HouseholderQr::r() const {
  const Eigen::Index k = qr_.cols();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) r(i, j) = qr_(i, j);
    r(j, j) = r_diag_[j];
  }
  return r;
}

PivotedQr::PivotedQr(const Eigen::MatrixXd& b_transposed, std::size_t max_steps)
    : work_(b_transposed) {
  const auto n_rows = static_cast<std::size_t>(work_.cols());  // rows of A
  const auto n_cols = static_cast<std::size_t>(work_.rows());  // columns of A
  const std::size_t limit = std::min({max_steps, n_rows, n_cols});
  const auto& kt = kernels::active();

  perm_.resize(n_cols);
  for (std::size_t j = 0; j < n_cols; ++j) perm_[j] = j;

  std::vector<double> norms(n_cols, 0.0);
  auto refresh_norms = [&](std::size_t first_row, std::size_t first_col) {
    std::fill(norms.begin() + static_cast<std::ptrdiff_t>(first_col), norms.end(), 0.0);
    for (std::size_t i = first_row; i < n_rows; ++i) {
      kt.accumulate_squares(work_.col(static_cast<Eigen::Index>(i)).data() + first_col,
                            norms.data() + first_col, n_cols - first_col);
    }
  };
  refresh_norms(0, 0);

  std::vector<double> v(n_rows);
  std::vector<double> s(n_cols);
  for (std::size_t k = 0; k < limit; ++k) {
    std::size_t best = k;
    for (std::size_t j = k + 1; j < n_cols; ++j) {
      if (norms[j] > norms[best] || (norms[j] == norms[best] && perm_[j] < perm_[best])) best = j;
    }
    if (best != k) {
      work_.row(static_cast<Eigen::Index>(k)).swap(work_.row(static_cast<Eigen::Index>(best)));
      std::swap(perm_[k], perm_[best]);
      std::swap(norms[k], norms[best]);
    }

    // Column k of the current A, rows k..end.
    const std::size_t len = n_rows - k;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = work_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + i));
    }
    double tau = 0.0;
    const double alpha = make_reflector({v.data(), len}, tau);

    // Apply H to columns k+1.. of A: s_j = sum_i v_i A(k+i, j), then
    // A(k+i, j) -= tau v_i s_j. Rows of A are contiguous here.
    const std::size_t tail = n_cols - (k + 1);
    if (tau != 0.0 && tail > 0) {
      std::fill(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(tail), 0.0);
      for (std::size_t i = 0; i < len; ++i) {
        if (v[i] == 0.0) continue;
        kt.axpy(v[i], work_.col(static_cast<Eigen::Index>(k + i)).data() + k + 1, s.data(), tail);
      }
      for (std::size_t i = 0; i < len; ++i) {
        if (v[i] == 0.0) continue;
        kt.axpy(-tau * v[i], s.data(), work_.col(static_cast<Eigen::Index>(k + i)).data() + k + 1,
                tail);
      }
    }
    work_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = alpha;
    for (std::size_t i = 1; i < len; ++i) {
      work_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + i)) = 0.0;
    }
    reflectors_.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(len)));
    taus_.push_back(tau);
    r_diag_.push_back(std::abs(alpha));
    ++steps_;
    refresh_norms(k + 1, k + 1);
  }
}

Eigen::MatrixXd PivotedQr::r() const { return work_.transpose(); }

Eigen::MatrixXd PivotedQr::q() const {
  const Eigen::Index n = work_.cols();
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  // Q = H_0 H_1 ... H_{s-1}; accumulate from the right.
  for (std::size_t k = steps_; k-- > 0;) {
    const Eigen::VectorXd& v = reflectors_[k];
    const Eigen::Index off = static_cast<Eigen::Index>(k);
    auto block = q.bottomRows(n - off);
    const Eigen::RowVectorXd vt_block = v.transpose() * block;
    block.noalias() -= taus_[k] * v * vt_block;
  }
  return q;
}

double condition_number(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace segpc::linalg
