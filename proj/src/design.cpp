#include "segpc/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "segpc/error.hpp"
#include "segpc/kernels.hpp"
#include "segpc/linalg.hpp"

namespace segpc {

Eigen::VectorXd coherence_weights(const StochasticSpace& space, const Eigen::MatrixXd& points) {
  if (static_cast<std::size_t>(points.cols()) != space.dim()) {
    throw InvalidArgument("pool dimension does not match the stochastic space");
  }
  Eigen::VectorXd w(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    double gauss_norm2 = 0.0;
    double uniform_factor = 1.0;
    for (std::size_t k = 0; k < space.dim(); ++k) {
      const double xi = points(i, static_cast<Eigen::Index>(k));
      if (space.marginal(k).kind() == MarginalKind::Gaussian) {
        gauss_norm2 += xi * xi;
      } else {
        if (std::abs(xi) > 1.0) {
          throw InvalidArgument("uniform coordinate outside [-1, 1] in row " + std::to_string(i));
        }
        uniform_factor *= std::pow(1.0 - xi * xi, 0.25);
      }
    }
    w[i] = std::exp(-0.25 * gauss_norm2) * uniform_factor;
  }
  return w;
}

Eigen::MatrixXd WeightedMeasurement::weighted() const {
  Eigen::MatrixXd a(psi.rows(), psi.cols());
  const auto& kt = kernels::active();
  for (Eigen::Index j = 0; j < psi.cols(); ++j) {
    kt.multiply(psi.col(j).data(), w_sqrt.data(), a.col(j).data(), rows());
  }
  return a;
}

WeightedMeasurement build_measurement(const ChaosBasis& basis, const SamplePool& pool,
                                      const Eigen::VectorXd& w_sqrt) {
  if (pool.size() < 1) throw InvalidArgument("measurement needs at least one pool point");
  if (pool.dim() != basis.dim()) {
    throw InvalidArgument("pool dimension " + std::to_string(pool.dim()) +
                          " does not match basis dimension " + std::to_string(basis.dim()));
  }
  if (static_cast<std::size_t>(w_sqrt.size()) != pool.size()) {
    throw InvalidArgument("weight vector length does not match pool size");
  }
  return {basis.eval_rows(pool.points), w_sqrt, pool.seed};
}

DesignPlan qr_select(const WeightedMeasurement& meas, std::size_t n_sel) {
  const std::size_t limit = std::min(meas.rows(), meas.cols());
  if (n_sel < 1 || n_sel > limit) {
    throw InvalidArgument("n_sel must lie in [1, min(q, P+1)] = [1, " + std::to_string(limit) +
                          "], got " + std::to_string(n_sel));
  }
  const linalg::PivotedQr qr(meas.weighted(), n_sel);
  const auto& r = qr.r_diag();
  for (std::size_t k = 0; k < n_sel; ++k) {
    if (!(r[k] >= 1e-12 * r[0]) || r[0] == 0.0) {
      throw RankDeficientPool("pool is rank deficient after " + std::to_string(k) +
                                  " pivots (|R_kk| = " + std::to_string(r[k]) +
                                  "); use a larger pool",
                              k);
    }
  }

  DesignPlan plan;
  plan.selected.assign(qr.permutation().begin(),
                       qr.permutation().begin() + static_cast<std::ptrdiff_t>(n_sel));
  plan.r_diag.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n_sel));
  plan.cond_number = std::numeric_limits<double>::quiet_NaN();
  if (n_sel == meas.cols()) {
    plan.cond_number = linalg::condition_number(gather_rows(meas.weighted(), plan.selected));
  }
  return plan;
}

std::vector<std::size_t> ranked_points(const WeightedMeasurement& meas, std::size_t n_total) {
  if (n_total > meas.rows()) {
    throw InvalidArgument("requested " + std::to_string(n_total) + " points from a pool of " +
                          std::to_string(meas.rows()));
  }
  std::vector<std::size_t> order;
  std::vector<std::size_t> remaining(meas.rows());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  while (order.size() < n_total) {
    WeightedMeasurement sub;
    sub.psi = gather_rows(meas.psi, remaining);
    sub.w_sqrt = gather(meas.w_sqrt, remaining);
    sub.pool_seed = meas.pool_seed;
    const std::size_t want =
        std::min({n_total - order.size(), sub.cols(), sub.rows()});
    const DesignPlan round = qr_select(sub, want);
    std::vector<bool> taken(remaining.size(), false);
    for (std::size_t s : round.selected) {
      order.push_back(remaining[s]);
      taken[s] = true;
    }
    std::vector<std::size_t> next;
    next.reserve(remaining.size() - round.selected.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!taken[i]) next.push_back(remaining[i]);
    }
    remaining = std::move(next);
  }
  return order;
}

ConditionDiagnostics condition_diagnostics(const WeightedMeasurement& meas,
                                           const DesignPlan& plan) {
  if (plan.selected.size() != meas.cols()) {
    throw InvalidArgument("condition diagnostics need exactly P+1 selected points");
  }
  double det = 1.0;
  for (double r : plan.r_diag) det *= r;
  const double cond = linalg::condition_number(gather_rows(meas.weighted(), plan.selected));
  return {cond, det};
}

std::size_t segpc_point_count(std::size_t basis_size, std::size_t m, double oversampling) {
  if (!(oversampling >= 1.0)) throw InvalidArgument("oversampling ratio must be >= 1");
  const double equations = std::ceil(oversampling * static_cast<double>(basis_size) - 1e-9);
  const auto eq = static_cast<std::size_t>(equations);
  return (eq + m) / (m + 1);
}

std::size_t wlsq_point_count(std::size_t basis_size, double oversampling) {
  if (!(oversampling >= 1.0)) throw InvalidArgument("oversampling ratio must be >= 1");
  return static_cast<std::size_t>(std::ceil(oversampling * static_cast<double>(basis_size) - 1e-9));
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& points, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), points.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& values, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Eigen::Index>(i)] = values[static_cast<Eigen::Index>(rows[i])];
  return out;
}

RankedDesign rank_design(const StochasticSpace& space, const ChaosBasis& basis, std::size_t q,
                         std::uint64_t seed, std::size_t n_points) {
  if (q < basis.size()) {
    throw InvalidArgument("pool of " + std::to_string(q) + " points is smaller than the " +
                          std::to_string(basis.size()) + " basis terms");
  }
  if (n_points > q) {
    throw InvalidArgument("requested " + std::to_string(n_points) + " points from a pool of " +
                          std::to_string(q));
  }
  RankedDesign out;
  out.pool = sample_pool(space, q, seed);
  const WeightedMeasurement meas =
      build_measurement(basis, out.pool, coherence_weights(space, out.pool.points));
  const DesignPlan first = qr_select(meas, std::min(n_points, basis.size()));
  out.r_diag = first.r_diag;
  out.cond_number = first.cond_number;
  out.rows = n_points <= basis.size() ? first.selected : ranked_points(meas, n_points);
  out.points = gather_rows(out.pool.points, out.rows);
  out.w_sqrt = gather(meas.w_sqrt, out.rows);
  return out;
}

}  // namespace segpc
