#include "segpc/burgers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "segpc/error.hpp"

namespace segpc {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Unknowns live on i = 1..N-1 (inlet column excluded), j = 1..N-2 (walls
// excluded); u block first, then v.
struct Layout {
  int n;
  int nx;
  int ny;

  explicit Layout(int grid) : n(grid), nx(grid - 1), ny(grid - 2) {}
  int nodes() const { return nx * ny; }
  int size() const { return 2 * nodes(); }
  bool unknown(int i, int j) const { return i >= 1 && i <= n - 1 && j >= 1 && j <= n - 2; }
  int u(int i, int j) const { return (i - 1) * ny + (j - 1); }
  int v(int i, int j) const { return nodes() + u(i, j); }
};

double inlet_u(const std::vector<double>& s, double y) {
  double acc = 0.0;
  for (std::size_t k = s.size(); k-- > 0;) acc = acc * y + s[k];
  return acc;
}

double inlet_v(double y, bool enabled) { return enabled ? y * y - y * y * y : 0.0; }

void apply_boundaries(const std::vector<double>& s, const BurgersOptions& opt, Eigen::MatrixXd& u,
                      Eigen::MatrixXd& v) {
  const int n = opt.grid;
  const double h = 1.0 / (n - 1);
  for (int j = 0; j < n; ++j) {
    u(0, j) = inlet_u(s, j * h);
    v(0, j) = inlet_v(j * h, opt.inlet_v);
  }
  u(0, 0) = u(0, n - 1) = 0.0;
  v(0, 0) = v(0, n - 1) = 0.0;
  for (int i = 0; i < n; ++i) {
    u(i, 0) = u(i, n - 1) = 0.0;
    v(i, 0) = v(i, n - 1) = 0.0;
  }
}

// Discrete residual at every unknown.
Eigen::VectorXd residual(const Layout& L, double re, const Eigen::MatrixXd& u,
                         const Eigen::MatrixXd& v) {
  const int n = L.n;
  const double h = 1.0 / (n - 1);
  const double c1 = 1.0 / (2.0 * h);
  const double c2 = 1.0 / (re * h * h);
  Eigen::VectorXd r(L.size());
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 2; ++j) {
      if (i == n - 1) {
        r[L.u(i, j)] = (3.0 * u(i, j) - 4.0 * u(i - 1, j) + u(i - 2, j)) * c1;
        r[L.v(i, j)] = (3.0 * v(i, j) - 4.0 * v(i - 1, j) + v(i - 2, j)) * c1;
        continue;
      }
      const double ux = (u(i + 1, j) - u(i - 1, j)) * c1;
      const double uy = (u(i, j + 1) - u(i, j - 1)) * c1;
      const double vx = (v(i + 1, j) - v(i - 1, j)) * c1;
      const double vy = (v(i, j + 1) - v(i, j - 1)) * c1;
      const double lap_u = u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) - 4.0 * u(i, j);
      const double lap_v = v(i + 1, j) + v(i - 1, j) + v(i, j + 1) + v(i, j - 1) - 4.0 * v(i, j);
      r[L.u(i, j)] = u(i, j) * ux + v(i, j) * uy - c2 * lap_u;
      r[L.v(i, j)] = u(i, j) * vx + v(i, j) * vy - c2 * lap_v;
    }
  }
  return r;
}

// Linearization. With `picard` the convecting velocity is frozen, dropping
// the terms that come from differentiating it.
SparseMatrix jacobian(const Layout& L, double re, const Eigen::MatrixXd& u,
                      const Eigen::MatrixXd& v, bool picard) {
  const int n = L.n;
  const double h = 1.0 / (n - 1);
  const double c1 = 1.0 / (2.0 * h);
  const double c2 = 1.0 / (re * h * h);
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(L.size()) * 7);
  auto add = [&](int row, bool is_u, int i, int j, double value) {
    if (!L.unknown(i, j)) return;
    t.emplace_back(row, is_u ? L.u(i, j) : L.v(i, j), value);
  };
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 2; ++j) {
      const int ru = L.u(i, j);
      const int rv = L.v(i, j);
      if (i == n - 1) {
        add(ru, true, i, j, 3.0 * c1);
        add(ru, true, i - 1, j, -4.0 * c1);
        add(ru, true, i - 2, j, c1);
        add(rv, false, i, j, 3.0 * c1);
        add(rv, false, i - 1, j, -4.0 * c1);
        add(rv, false, i - 2, j, c1);
        continue;
      }
      const double uc = u(i, j);
      const double vc = v(i, j);
      const double ux = (u(i + 1, j) - u(i - 1, j)) * c1;
      const double uy = (u(i, j + 1) - u(i, j - 1)) * c1;
      const double vx = (v(i + 1, j) - v(i - 1, j)) * c1;
      const double vy = (v(i, j + 1) - v(i, j - 1)) * c1;

      add(ru, true, i, j, 4.0 * c2 + (picard ? 0.0 : ux));
      add(ru, true, i + 1, j, uc * c1 - c2);
      add(ru, true, i - 1, j, -uc * c1 - c2);
      add(ru, true, i, j + 1, vc * c1 - c2);
      add(ru, true, i, j - 1, -vc * c1 - c2);
      if (!picard) add(ru, false, i, j, uy);

      add(rv, false, i, j, 4.0 * c2 + (picard ? 0.0 : vy));
      add(rv, false, i + 1, j, uc * c1 - c2);
      add(rv, false, i - 1, j, -uc * c1 - c2);
      add(rv, false, i, j + 1, vc * c1 - c2);
      add(rv, false, i, j - 1, -vc * c1 - c2);
      if (!picard) add(rv, true, i, j, vx);
    }
  }
  SparseMatrix jac(L.size(), L.size());
  jac.setFromTriplets(t.begin(), t.end());
  jac.makeCompressed();
  return jac;
}

void apply_update(const Layout& L, const Eigen::VectorXd& delta, double step, Eigen::MatrixXd& u,
                  Eigen::MatrixXd& v) {
  for (int i = 1; i <= L.n - 1; ++i) {
    for (int j = 1; j <= L.n - 2; ++j) {
      u(i, j) += step * delta[L.u(i, j)];
      v(i, j) += step * delta[L.v(i, j)];
    }
  }
}

double inf_norm(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<double> burgers_inlet_coefficients(std::span<const double> free_s) {
  std::vector<double> s(free_s.size() + 2, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < free_s.size(); ++i) {
    s[i + 1] = free_s[i];
    sum += free_s[i];
  }
  s.back() = -sum;
  return s;
}

BurgersState burgers_solve(std::span<const double> free_s, const BurgersOptions& options) {
  if (options.grid < 5) throw InvalidArgument("Burgers grid needs at least 5 nodes per direction");
  if (!(options.re > 0.0)) throw InvalidArgument("Reynolds number must be positive");

  const Layout L(options.grid);
  const int n = options.grid;
  BurgersState st;
  st.grid = n;
  st.re = options.re;
  st.s = burgers_inlet_coefficients(free_s);
  st.u = Eigen::MatrixXd::Zero(n, n);
  st.v = Eigen::MatrixXd::Zero(n, n);
  apply_boundaries(st.s, options, st.u, st.v);
  // Initial guess: inlet profile carried downstream.
  for (int i = 1; i < n; ++i) {
    st.u.row(i) = st.u.row(0);
    st.v.row(i) = st.v.row(0);
  }
  apply_boundaries(st.s, options, st.u, st.v);

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  bool pattern_ready = false;

  Eigen::VectorXd r = residual(L, options.re, st.u, st.v);
  double rnorm = inf_norm(r);
  st.residual_history.push_back(rnorm);

  for (int it = 0; it < options.max_iterations && rnorm > options.tolerance; ++it) {
    bool accepted = false;
    for (bool picard : {false, true}) {
      const SparseMatrix jac = jacobian(L, options.re, st.u, st.v, picard);
      if (!pattern_ready) {
        lu.analyzePattern(jac);
        pattern_ready = true;
      }
      lu.factorize(jac);
      if (lu.info() != Eigen::Success) continue;
      const Eigen::VectorXd delta = -lu.solve(r);
      if (lu.info() != Eigen::Success || !delta.allFinite()) continue;

      // Backtracking on the residual infinity norm.
      for (double step = 1.0; step >= 1.0 / 256.0; step *= 0.5) {
        Eigen::MatrixXd u_try = st.u;
        Eigen::MatrixXd v_try = st.v;
        apply_update(L, delta, step, u_try, v_try);
        Eigen::VectorXd r_try = residual(L, options.re, u_try, v_try);
        const double n_try = inf_norm(r_try);
        if (std::isfinite(n_try) && n_try < rnorm) {
          st.u = std::move(u_try);
          st.v = std::move(v_try);
          r = std::move(r_try);
          rnorm = n_try;
          accepted = true;
          break;
        }
      }
      if (accepted) break;
    }
    if (!accepted) break;
    ++st.iterations;
    st.residual_history.push_back(rnorm);
  }
  st.residual_norm = rnorm;
  if (!(rnorm <= options.tolerance)) {
    throw SolverDivergence("Burgers solver did not converge: residual " + std::to_string(rnorm) +
                               " after " + std::to_string(st.iterations) + " iterations",
                           rnorm);
  }
  return st;
}

double burgers_qoi(const BurgersState& state) {
  const int n = state.grid;
  if (n < 2 || state.u.rows() != n || state.v.rows() != n) {
    throw InvalidArgument("Burgers state has inconsistent grid size");
  }
  const double h = state.h();
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double e = 0.5 * (state.u(n - 1, j) * state.u(n - 1, j) +
                            state.v(n - 1, j) * state.v(n - 1, j));
    acc += (j == 0 || j == n - 1) ? 0.5 * e : e;
  }
  return acc * h;
}

BurgersAdjoint burgers_adjoint(const BurgersState& state) {
  const int n = state.grid;
  if (n < 5 || state.u.rows() != n || state.v.rows() != n) {
    throw InvalidArgument("Burgers state has inconsistent grid size");
  }
  const Layout L(n);
  const double h = state.h();
  const double c1 = 1.0 / (2.0 * h);
  const double inv_re = 1.0 / state.re;
  const double c2 = inv_re / (h * h);
  const auto& u = state.u;
  const auto& v = state.v;

  // Unknown a = u+, b = v+. Interior:
  //   a v_y + u a_x + v a_y + (1/Re) lap a - b v_x = 0
  //   b u_x + u b_x + v b_y + (1/Re) lap b - a u_y = 0
  // Exit (Robin): a u + (1/Re) a_x + u = 0, b u + (1/Re) b_x + v = 0.
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(L.size()) * 7);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L.size());
  auto add = [&](int row, bool is_a, int i, int j, double value) {
    if (!L.unknown(i, j)) return;
    t.emplace_back(row, is_a ? L.u(i, j) : L.v(i, j), value);
  };
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 2; ++j) {
      const int ra = L.u(i, j);
      const int rb = L.v(i, j);
      const double uc = u(i, j);
      const double vc = v(i, j);
      if (i == n - 1) {
        add(ra, true, i, j, uc + 3.0 * c1 * inv_re);
        add(ra, true, i - 1, j, -4.0 * c1 * inv_re);
        add(ra, true, i - 2, j, c1 * inv_re);
        rhs[ra] = -uc;
        add(rb, false, i, j, uc + 3.0 * c1 * inv_re);
        add(rb, false, i - 1, j, -4.0 * c1 * inv_re);
        add(rb, false, i - 2, j, c1 * inv_re);
        rhs[rb] = -vc;
        continue;
      }
      const double ux = (u(i + 1, j) - u(i - 1, j)) * c1;
      const double uy = (u(i, j + 1) - u(i, j - 1)) * c1;
      const double vx = (v(i + 1, j) - v(i - 1, j)) * c1;
      const double vy = (v(i, j + 1) - v(i, j - 1)) * c1;

      add(ra, true, i, j, vy - 4.0 * c2);
      add(ra, true, i + 1, j, uc * c1 + c2);
      add(ra, true, i - 1, j, -uc * c1 + c2);
      add(ra, true, i, j + 1, vc * c1 + c2);
      add(ra, true, i, j - 1, -vc * c1 + c2);
      add(ra, false, i, j, -vx);

      add(rb, false, i, j, ux - 4.0 * c2);
      add(rb, false, i + 1, j, uc * c1 + c2);
      add(rb, false, i - 1, j, -uc * c1 + c2);
      add(rb, false, i, j + 1, vc * c1 + c2);
      add(rb, false, i, j - 1, -vc * c1 + c2);
      add(rb, true, i, j, -uy);
    }
  }
  SparseMatrix a(L.size(), L.size());
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw AdjointSolveError("adjoint system factorization failed");
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !sol.allFinite()) {
    throw AdjointSolveError("adjoint system solve failed");
  }

  BurgersAdjoint out;
  out.u_adj = Eigen::MatrixXd::Zero(n, n);
  out.v_adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = 1; j <= n - 2; ++j) {
      out.u_adj(i, j) = sol[L.u(i, j)];
      out.v_adj(i, j) = sol[L.v(i, j)];
    }
  }

  // dk_e/ds_k = -int (u+ + v+) u y^k dy - (1/Re) int u+_x y^k dy at x = 0,
  // with a one-sided second-order u+_x.
  const std::size_t n_coef = state.s.size();
  out.partial_gradient.assign(n_coef, 0.0);
  for (int j = 0; j < n; ++j) {
    const double y = j * h;
    const double ax = (-3.0 * out.u_adj(0, j) + 4.0 * out.u_adj(1, j) - out.u_adj(2, j)) * c1;
    const double integrand_base =
        -(out.u_adj(0, j) + out.v_adj(0, j)) * u(0, j) - inv_re * ax;
    const double wj = (j == 0 || j == n - 1) ? 0.5 * h : h;
    double yk = 1.0;
    for (std::size_t k = 0; k < n_coef; ++k) {
      out.partial_gradient[k] += wj * integrand_base * yk;
      yk *= y;
    }
  }
  const std::size_t m = n_coef >= 2 ? n_coef - 2 : 0;
  out.gradient.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.gradient[k] = out.partial_gradient[k + 1] - out.partial_gradient[n_coef - 1];
  }
  return out;
}

const std::vector<double>& burgers_nominal_coefficients() {
  static const std::vector<double> means{-0.5, -0.1, 0.1, 0.01, -0.25,
                                         0.15, 0.15, -0.1, 0.01, -0.25};
  return means;
}

namespace {
StochasticSpace burgers_space(const std::vector<double>& means) {
  if (means.empty()) throw InvalidArgument("Burgers model needs at least one inlet coefficient");
  std::vector<Marginal> marginals;
  marginals.reserve(means.size());
  for (double mu : means) {
    if (mu == 0.0) throw InvalidArgument("Burgers inlet coefficient mean must be non-zero");
    marginals.emplace_back(GaussianMarginal{mu, std::abs(mu) / 5.0});
  }
  return StochasticSpace(std::move(marginals));
}

std::vector<double> first_nominal(std::size_t m) {
  const auto& all = burgers_nominal_coefficients();
  if (m < 1 || m > all.size()) {
    throw InvalidArgument("Burgers model with nominal means supports 1 <= m <= " +
                          std::to_string(all.size()));
  }
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m)};
}
}  // namespace

BurgersModel::BurgersModel(std::size_t m, BurgersOptions options)
    : BurgersModel(first_nominal(m), options) {}

BurgersModel::BurgersModel(std::vector<double> means, BurgersOptions options)
    : options_(options), space_(burgers_space(means)) {}

PhysicalEvaluation BurgersModel::evaluate_physical(std::span<const double> x,
                                                   bool with_gradient) const {
  const BurgersState st = burgers_solve(x, options_);
  PhysicalEvaluation out;
  out.value = burgers_qoi(st);
  if (with_gradient) out.gradient = burgers_adjoint(st).gradient;
  return out;
}

}  // namespace segpc
