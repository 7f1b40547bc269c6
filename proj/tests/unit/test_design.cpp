#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "segpc/design.hpp"
#include "segpc/error.hpp"
#include "segpc/linalg.hpp"

using namespace segpc;

namespace {

StochasticSpace gaussian(std::size_t m) { return StochasticSpace::iid(m, Marginal::standard_gaussian()); }

// |det| of the square submatrix (P+1 selected rows of W^{1/2} psi), oracle by LU.
double subset_det(const Eigen::MatrixXd& a, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd s(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) s.row(static_cast<Eigen::Index>(i)) = a.row(static_cast<Eigen::Index>(rows[i]));
  return std::abs(s.partialPivLu().determinant());
}

}  // namespace

TEST_SUITE("design") {

TEST_CASE("coherence weights") {
  const auto g2 = gaussian(2);
  Eigen::MatrixXd pts(3, 2);
  pts << 0.0, 0.0, 2.0, 0.0, std::sqrt(2.0), -std::sqrt(2.0);
  const Eigen::VectorXd w = coherence_weights(g2, pts);
  CHECK(w[0] == 1.0);
  CHECK(w[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(w[2] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  const auto u1 = StochasticSpace::iid(1, Marginal::standard_uniform());
  Eigen::MatrixXd up(3, 1);
  up << 0.0, 1.0, 0.5;
  const Eigen::VectorXd wu = coherence_weights(u1, up);
  CHECK(wu[0] == 1.0);
  CHECK(wu[1] == 0.0);
  CHECK(wu[2] == doctest::Approx(std::pow(0.75, 0.25)).epsilon(1e-15));
  Eigen::MatrixXd bad(1, 1);
  bad << 1.01;
  CHECK_THROWS_AS(coherence_weights(u1, bad), InvalidArgument);

  // Mixed: the Gaussian factor sees only the Gaussian coordinate.
  const StochasticSpace mixed({Marginal::standard_gaussian(), Marginal::standard_uniform()});
  Eigen::MatrixXd mp(1, 2);
  mp << 2.0, 0.5;
  CHECK(coherence_weights(mixed, mp)[0] ==
        doctest::Approx(std::exp(-1.0) * std::pow(0.75, 0.25)).epsilon(1e-15));
}

TEST_CASE("measurement assembly") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 4);
  const SamplePool pool = sample_pool(g2, 10000, 3);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  CHECK(meas.rows() == 10000);
  CHECK(meas.cols() == 15);
  CHECK(meas.psi.col(0).isOnes());
  const Eigen::VectorXd row = basis.eval(std::vector<double>{pool.points(17, 0), pool.points(17, 1)});
  CHECK((meas.psi.row(17).transpose() - row).cwiseAbs().maxCoeff() == 0.0);
  CHECK(meas.w_sqrt.maxCoeff() <= 1.0);
  CHECK(meas.w_sqrt.minCoeff() > 0.0);
}

TEST_CASE("selection invariants") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 3);
  const SamplePool pool = sample_pool(g2, 500, 4);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  const DesignPlan plan = qr_select(meas, basis.size());
  CHECK(plan.selected.size() == basis.size());
  CHECK(std::set<std::size_t>(plan.selected.begin(), plan.selected.end()).size() == basis.size());
  for (std::size_t i = 1; i < plan.r_diag.size(); ++i) CHECK(plan.r_diag[i] <= plan.r_diag[i - 1]);

  // First pivot: the row of largest weighted norm.
  const Eigen::MatrixXd a = meas.weighted();
  Eigen::Index best = 0;
  a.rowwise().norm().maxCoeff(&best);
  CHECK(qr_select(meas, 1).selected[0] == static_cast<std::size_t>(best));

  // Determinant is the product of the pivots.
  const auto diag = condition_diagnostics(meas, plan);
  CHECK(diag.det_magnitude == doctest::Approx(subset_det(a, plan.selected)).epsilon(1e-10));
  CHECK(diag.cond_number == doctest::Approx(plan.cond_number).epsilon(1e-12));
  CHECK_THROWS_AS(qr_select(meas, basis.size() + 1), InvalidArgument);
}

TEST_CASE("QR factors reconstruct the pivoted matrix") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 2);
  const SamplePool pool = sample_pool(g2, 40, 8);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  const Eigen::MatrixXd b = meas.weighted();  // q x (P+1); A = B^T
  const linalg::PivotedQr qr(b, basis.size());
  const Eigen::MatrixXd qr_prod = qr.q() * qr.r();
  Eigen::MatrixXd ap(b.cols(), b.rows());
  for (std::size_t j = 0; j < qr.permutation().size(); ++j) {
    ap.col(static_cast<Eigen::Index>(j)) = b.row(static_cast<Eigen::Index>(qr.permutation()[j])).transpose();
  }
  CHECK((qr_prod - ap).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("orthogonal selection has unit condition number") {
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(3, 3) * 2.0;
  WeightedMeasurement meas{b, Eigen::VectorXd::Ones(3), 0};
  const DesignPlan plan = qr_select(meas, 3);
  CHECK(plan.cond_number == doctest::Approx(1.0));
}

TEST_CASE("rank-deficient pool") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 2);
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(20, 2);
  for (int i = 0; i < 20; ++i) pts(i, 0) = 0.1 * i;  // all on a line
  const SamplePool pool{pts, 0};
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pts));
  CHECK_THROWS_AS(qr_select(meas, basis.size()), RankDeficientPool);
}

TEST_CASE("greedy determinant dominates random subsets") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 1);
  const SamplePool pool = sample_pool(g2, 60, 12);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  const Eigen::MatrixXd a = meas.weighted();
  const double greedy = subset_det(a, qr_select(meas, basis.size()).selected);

  std::mt19937_64 rng(99);
  std::vector<std::size_t> idx(60);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> dets;
  for (int t = 0; t < 1000; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    dets.push_back(subset_det(a, {idx[0], idx[1], idx[2]}));
  }
  std::sort(dets.begin(), dets.end());
  CHECK(greedy >= dets[989]);
}

TEST_CASE("pool reordering only relabels the selection") {
  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 2);
  const SamplePool pool = sample_pool(g2, 300, 21);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  const DesignPlan plan = qr_select(meas, basis.size());

  const Eigen::MatrixXd rev = pool.points.colwise().reverse();
  const SamplePool rpool{rev, 21};
  const auto rmeas = build_measurement(basis, rpool, coherence_weights(g2, rev));
  const DesignPlan rplan = qr_select(rmeas, basis.size());
  for (std::size_t i = 0; i < plan.selected.size(); ++i) CHECK(rplan.selected[i] == 299 - plan.selected[i]);
}

TEST_CASE("even order places a QR point near the mean") {
  const auto g2 = gaussian(2);
  for (std::size_t p : {2u, 3u}) {
    const ChaosBasis basis(g2, p);
    const RankedDesign d = rank_design(g2, basis, 10000, 5, basis.size());
    double rmin = 1e9;
    for (Eigen::Index i = 0; i < d.points.rows(); ++i) rmin = std::min(rmin, d.points.row(i).norm());
    if (p == 2) {
      CHECK(rmin < 0.15);
    } else {
      CHECK(rmin > 0.15);
    }
  }
}

TEST_CASE("point counts and ranked rounds") {
  CHECK(segpc_point_count(3, 2) == 1);
  CHECK(segpc_point_count(861, 40) == 21);
  CHECK(segpc_point_count(7, 1) == 4);
  CHECK(segpc_point_count(7, 1, 2.0) == 7);
  CHECK(wlsq_point_count(7, 1.5) == 11);

  const auto g2 = gaussian(2);
  const ChaosBasis basis(g2, 2);
  const SamplePool pool = sample_pool(g2, 200, 1);
  const auto meas = build_measurement(basis, pool, coherence_weights(g2, pool.points));
  const auto rows = ranked_points(meas, 14);
  CHECK(rows.size() == 14);
  CHECK(std::set<std::size_t>(rows.begin(), rows.end()).size() == 14);
  const auto first = qr_select(meas, 6).selected;
  CHECK(std::equal(first.begin(), first.end(), rows.begin()));

  CHECK_THROWS_AS(rank_design(g2, basis, 5, 1, 3), InvalidArgument);
}

}
