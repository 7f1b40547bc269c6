#include "segpc/orthopoly.hpp"

#include <cmath>
#include <string>

#include "segpc/error.hpp"
#include "segpc/kernels.hpp"

namespace segpc {

PolyFamily family_for(MarginalKind kind) {
  return kind == MarginalKind::Gaussian ? PolyFamily::Hermite : PolyFamily::Legendre;
}

const char* to_string(PolyFamily family) {
  return family == PolyFamily::Hermite ? "hermite" : "legendre";
}

void univariate_table(PolyFamily family, int max_degree, double x, std::span<double> values,
                      std::span<double> derivatives) {
  if (max_degree < 0) throw InvalidArgument("polynomial degree must be non-negative");
  const auto n_terms = static_cast<std::size_t>(max_degree) + 1;
  if (values.size() < n_terms || derivatives.size() < n_terms) {
    throw InvalidArgument("univariate table buffers too short");
  }
  values[0] = 1.0;
  derivatives[0] = 0.0;
  if (max_degree == 0) return;

  if (family == PolyFamily::Hermite) {
    values[1] = x;
    derivatives[1] = 1.0;
    for (int n = 1; n < max_degree; ++n) {
      const double sn = std::sqrt(static_cast<double>(n));
      const double inv = 1.0 / std::sqrt(static_cast<double>(n + 1));
      values[n + 1] = (x * values[n] - sn * values[n - 1]) * inv;
      derivatives[n + 1] = (values[n] + x * derivatives[n] - sn * derivatives[n - 1]) * inv;
    }
    return;
  }

  const double s3 = std::sqrt(3.0);
  values[1] = s3 * x;
  derivatives[1] = s3;
  for (int n = 1; n < max_degree; ++n) {
    const double dn = static_cast<double>(n);
    const double a = std::sqrt(2.0 * dn + 3.0) / (dn + 1.0);
    const double b = std::sqrt(2.0 * dn + 1.0);
    const double c = dn / std::sqrt(2.0 * dn - 1.0);
    values[n + 1] = a * (b * x * values[n] - c * values[n - 1]);
    derivatives[n + 1] = a * (b * (values[n] + x * derivatives[n]) - c * derivatives[n - 1]);
  }
}

PolyValue univariate_eval(PolyFamily family, int degree, double x) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be non-negative");
  std::vector<double> v(static_cast<std::size_t>(degree) + 1);
  std::vector<double> d(v.size());
  univariate_table(family, degree, x, v, d);
  return {v.back(), d.back()};
}

std::size_t index_set_size(std::size_t m, std::size_t p, std::size_t limit) {
  // C(p+m, min(p,m)), exact in 128-bit until it passes `limit`.
  const std::size_t k = std::min(m, p);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(p + m - k + i) / i;
    if (r > limit) {
      throw SizeError("basis size for m=" + std::to_string(m) + ", p=" + std::to_string(p) +
                      " exceeds " + std::to_string(limit) + " terms");
    }
  }
  return static_cast<std::size_t>(r);
}

namespace {

void append_degree(std::size_t m, int degree, std::vector<int>& prefix,
                   std::vector<std::vector<int>>& out) {
  if (prefix.size() + 1 == m) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = degree; first >= 0; --first) {
    prefix.push_back(first);
    append_degree(m, degree - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MultiIndexSet::MultiIndexSet(std::size_t m, std::size_t p) : m_(m), p_(p) {
  if (m == 0) throw InvalidArgument("multi-index set needs m >= 1");
  indices_.reserve(index_set_size(m, p));
  std::vector<int> prefix;
  prefix.reserve(m);
  for (std::size_t d = 0; d <= p; ++d) append_degree(m, static_cast<int>(d), prefix, indices_);
}

int MultiIndexSet::total_degree(std::size_t j) const {
  int s = 0;
  for (int a : indices_[j]) s += a;
  return s;
}

ChaosBasis::ChaosBasis(std::vector<PolyFamily> families, std::size_t order)
    : families_(std::move(families)), index_set_(families_.size(), order) {}

namespace {
std::vector<PolyFamily> families_of(const StochasticSpace& space) {
  std::vector<PolyFamily> f;
  f.reserve(space.dim());
  for (const auto& m : space.marginals()) f.push_back(family_for(m.kind()));
  return f;
}
}  // namespace

ChaosBasis::ChaosBasis(const StochasticSpace& space, std::size_t order)
    : ChaosBasis(families_of(space), order) {}

void ChaosBasis::tables(std::span<const double> xi, std::vector<double>& values,
                        std::vector<double>* derivatives) const {
  if (xi.size() != dim()) {
    throw InvalidArgument("point has " + std::to_string(xi.size()) + " coordinates, basis has " +
                          std::to_string(dim()));
  }
  const std::size_t stride = order() + 1;
  values.resize(dim() * stride);
  std::vector<double> scratch;
  if (derivatives) {
    derivatives->resize(dim() * stride);
  } else {
    scratch.resize(stride);
  }
  for (std::size_t k = 0; k < dim(); ++k) {
    std::span<double> v(values.data() + k * stride, stride);
    std::span<double> d = derivatives ? std::span<double>(derivatives->data() + k * stride, stride)
                                      : std::span<double>(scratch);
    univariate_table(families_[k], static_cast<int>(order()), xi[k], v, d);
  }
}

void ChaosBasis::eval_into(std::span<const double> xi, std::span<double> out) const {
  if (out.size() != size()) throw InvalidArgument("basis output buffer has wrong length");
  std::vector<double> v;
  tables(xi, v, nullptr);
  const std::size_t stride = order() + 1;
  const auto& idx = index_set_.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    double prod = 1.0;
    for (std::size_t k = 0; k < dim(); ++k) {
      if (idx[j][k] != 0) prod *= v[k * stride + static_cast<std::size_t>(idx[j][k])];
    }
    out[j] = prod;
  }
}

Eigen::VectorXd ChaosBasis::eval(std::span<const double> xi) const {
  Eigen::VectorXd row(static_cast<Eigen::Index>(size()));
  eval_into(xi, {row.data(), size()});
  return row;
}

Eigen::MatrixXd ChaosBasis::grad(std::span<const double> xi) const {
  std::vector<double> v;
  std::vector<double> d;
  tables(xi, v, &d);
  const std::size_t stride = order() + 1;
  const auto& idx = index_set_.indices();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()),
                                            static_cast<Eigen::Index>(size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t k = 0; k < dim(); ++k) {
      if (idx[j][k] == 0) continue;
      double prod = d[k * stride + static_cast<std::size_t>(idx[j][k])];
      for (std::size_t l = 0; l < dim(); ++l) {
        if (l != k && idx[j][l] != 0) prod *= v[l * stride + static_cast<std::size_t>(idx[j][l])];
      }
      g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = prod;
    }
  }
  return g;
}

Eigen::MatrixXd ChaosBasis::eval_rows(const Eigen::MatrixXd& points) const {
  if (static_cast<std::size_t>(points.cols()) != dim()) {
    throw InvalidArgument("point matrix has wrong number of columns for basis");
  }
  // Row-major scratch so each evaluation writes contiguously.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(points.rows(),
                                                                              size());
  std::vector<double> xi(dim());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (std::size_t k = 0; k < dim(); ++k) xi[k] = points(i, static_cast<Eigen::Index>(k));
    eval_into(xi, {rows.row(i).data(), size()});
  }
  return rows;
}

Eigen::VectorXd ChaosBasis::eval_expansion(const Eigen::MatrixXd& points,
                                           const Eigen::VectorXd& coefficients) const {
  if (static_cast<std::size_t>(coefficients.size()) != size()) {
    throw InvalidArgument("coefficient vector length does not match basis size");
  }
  if (static_cast<std::size_t>(points.cols()) != dim()) {
    throw InvalidArgument("point matrix has wrong number of columns for basis");
  }
  const auto& kt = kernels::active();
  Eigen::VectorXd out(points.rows());
  std::vector<double> xi(dim());
  std::vector<double> row(size());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (std::size_t k = 0; k < dim(); ++k) xi[k] = points(i, static_cast<Eigen::Index>(k));
    eval_into(xi, row);
    out[i] = kt.dot(row.data(), coefficients.data(), size());
  }
  return out;
}

}  // namespace segpc
