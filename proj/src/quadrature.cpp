#include "segpc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "segpc/error.hpp"
#include "segpc/kernels.hpp"

namespace segpc {

GaussRule gauss_rule(PolyFamily family, std::size_t n_points) {
  if (n_points < 1) throw InvalidArgument("a Gauss rule needs at least one point");
  const auto n = static_cast<Eigen::Index>(n_points);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double b = family == PolyFamily::Hermite ? std::sqrt(kk)
                                                   : kk / std::sqrt(4.0 * kk * kk - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success) throw InvalidArgument("Jacobi eigenproblem failed");

  GaussRule rule;
  rule.nodes = eig.eigenvalues();
  rule.weights = eig.eigenvectors().row(0).transpose().array().square();
  // Both measures are symmetric; enforce it so the rule is exactly
  // symmetric and the middle node of odd rules is exactly zero.
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    const Eigen::Index j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = w;
    rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  rule.weights /= rule.weights.sum();
  return rule;
}

namespace {

// Full tensor product of per-dimension rules, scaled by `factor`, appended
// to (nodes, weights).
void append_tensor(const std::vector<const GaussRule*>& rules, double factor,
                   std::vector<std::vector<double>>& nodes, std::vector<double>& weights) {
  const std::size_t m = rules.size();
  std::vector<Eigen::Index> idx(m, 0);
  for (;;) {
    std::vector<double> x(m);
    double w = factor;
    for (std::size_t k = 0; k < m; ++k) {
      x[k] = rules[k]->nodes[idx[k]];
      w *= rules[k]->weights[idx[k]];
    }
    nodes.push_back(std::move(x));
    weights.push_back(w);
    std::size_t k = m;
    while (k > 0) {
      --k;
      if (++idx[k] < rules[k]->nodes.size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

QuadratureRule to_rule(const std::vector<std::vector<double>>& nodes,
                       const std::vector<double>& weights, std::size_t m) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(m));
  rule.weights.resize(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      rule.nodes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = nodes[i][k];
    }
    rule.weights[static_cast<Eigen::Index>(i)] = weights[i];
  }
  return rule;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// All compositions of `total` into m non-negative parts, last part fastest.
void compositions(std::size_t m, std::size_t total, std::vector<std::size_t>& current,
                  std::vector<std::vector<std::size_t>>& out) {
  if (current.size() + 1 == m) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t t = total + 1; t-- > 0;) {
    current.push_back(t);
    compositions(m, total - t, current, out);
    current.pop_back();
  }
}

}  // namespace

QuadratureRule tensor_rule(const std::vector<PolyFamily>& families, std::size_t points_per_dim) {
  if (families.empty()) throw InvalidArgument("tensor rule needs m >= 1");
  if (points_per_dim < 1) throw InvalidArgument("tensor rule needs at least one point per dimension");
  double total = 1.0;
  for (std::size_t k = 0; k < families.size(); ++k) total *= static_cast<double>(points_per_dim);
  if (total > static_cast<double>(kMaxRuleNodes)) {
    throw SizeError("tensor rule would have " + std::to_string(total) + " nodes");
  }
  const GaussRule hermite = gauss_rule(PolyFamily::Hermite, points_per_dim);
  const GaussRule legendre = gauss_rule(PolyFamily::Legendre, points_per_dim);
  std::vector<const GaussRule*> rules;
  for (PolyFamily f : families) rules.push_back(f == PolyFamily::Hermite ? &hermite : &legendre);

  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  append_tensor(rules, 1.0, nodes, weights);
  QuadratureRule rule = to_rule(nodes, weights, families.size());
  rule.kind = "tensor";
  rule.level = points_per_dim;
  return rule;
}

QuadratureRule merge_nodes(const QuadratureRule& rule) {
  const std::size_t m = rule.dim();
  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    std::vector<long long> key(m);
    std::vector<double> x(m);
    for (std::size_t k = 0; k < m; ++k) {
      x[k] = rule.nodes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      key[k] = std::llround(x[k] * 1e12);
    }
    const auto [it, inserted] = seen.emplace(std::move(key), nodes.size());
    if (inserted) {
      nodes.push_back(std::move(x));
      weights.push_back(rule.weights[static_cast<Eigen::Index>(i)]);
    } else {
      weights[it->second] += rule.weights[static_cast<Eigen::Index>(i)];
    }
  }
  QuadratureRule out = to_rule(nodes, weights, m);
  out.kind = rule.kind;
  out.level = rule.level;
  return out;
}

QuadratureRule smolyak_rule(const std::vector<PolyFamily>& families, std::size_t level) {
  const std::size_t m = families.size();
  if (m == 0) throw InvalidArgument("Smolyak rule needs m >= 1");
  if (level < 1) throw InvalidArgument("Smolyak level must be >= 1");
  // Number of level multi-indices; throws SizeError for absurd (m, level).
  index_set_size(m, level - 1, kMaxRuleNodes);

  std::vector<GaussRule> hermite;
  std::vector<GaussRule> legendre;
  for (std::size_t l = 1; l <= level; ++l) {
    hermite.push_back(gauss_rule(PolyFamily::Hermite, 2 * l - 1));
    legendre.push_back(gauss_rule(PolyFamily::Legendre, 2 * l - 1));
  }

  // Q = sum over levels i (i_k >= 1) with level - m < |i - 1| <= level - 1 of
  // (-1)^(level-1-|i-1|) C(m-1, level-1-|i-1|) U^{i_1} x ... x U^{i_m}.
  std::vector<std::vector<std::size_t>> terms;
  std::vector<double> factors;
  double total_nodes = 0.0;
  const std::size_t d_min = level > m ? level - m : 0;
  for (std::size_t d = d_min; d <= level - 1; ++d) {
    const std::size_t gap = level - 1 - d;
    const double c = (gap % 2 == 0 ? 1.0 : -1.0) * binomial(m - 1, gap);
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> current;
    compositions(m, d, current, parts);
    for (auto& p : parts) {
      double count = 1.0;
      for (std::size_t e : p) count *= static_cast<double>(2 * e + 1);
      total_nodes += count;
      terms.push_back(std::move(p));
      factors.push_back(c);
    }
  }
  if (total_nodes > static_cast<double>(kMaxRuleNodes)) {
    throw SizeError("Smolyak level " + std::to_string(level) + " in " + std::to_string(m) +
                    " dimensions needs " + std::to_string(total_nodes) + " nodes");
  }

  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  std::vector<const GaussRule*> rules(m);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t e = terms[t][k];
      rules[k] = families[k] == PolyFamily::Hermite ? &hermite[e] : &legendre[e];
    }
    append_tensor(rules, factors[t], nodes, weights);
  }
  QuadratureRule raw = to_rule(nodes, weights, m);
  raw.kind = "smolyak";
  raw.level = level;
  return merge_nodes(raw);
}

Eigen::VectorXd project(const ChaosBasis& basis, const QuadratureRule& rule,
                        const Eigen::VectorXd& values) {
  if (rule.dim() != basis.dim()) throw InvalidArgument("rule and basis dimensions differ");
  if (static_cast<std::size_t>(values.size()) != rule.size()) {
    throw InvalidArgument("one value per rule node is required");
  }
  const auto& kt = kernels::active();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  std::vector<double> row(basis.size());
  std::vector<double> xi(basis.dim());
  for (std::size_t n = 0; n < rule.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = rule.nodes(i, static_cast<Eigen::Index>(k));
    basis.eval_into(xi, row);
    kt.axpy(rule.weights[i] * values[i], row.data(), c.data(), row.size());
  }
  return c;
}

PceSurrogate quadrature_fit(const ChaosBasis& basis, const QuadratureRule& rule,
                            const Model& model, std::size_t workers) {
  if (model.dim() != basis.dim()) throw InvalidArgument("model and basis dimensions differ");
  const auto evals = evaluate_points(model, rule.nodes, false, workers);
  Eigen::VectorXd values(static_cast<Eigen::Index>(evals.size()));
  for (std::size_t i = 0; i < evals.size(); ++i) values[static_cast<Eigen::Index>(i)] = evals[i].value;
  FitReport report;
  report.method = rule.kind;
  report.n_points = rule.size();
  report.n_equations = rule.size();
  report.evaluation_count = rule.size();
  report.cond_number = std::nan("");
  return PceSurrogate(basis, project(basis, rule, values), std::move(report));
}

QuadratureMoments quadrature_moments(const Model& model, const QuadratureRule& rule,
                                     std::size_t workers) {
  if (rule.dim() != model.dim()) throw InvalidArgument("rule and model dimensions differ");
  const auto evals = evaluate_points(model, rule.nodes, false, workers);
  Eigen::ArrayXd y(static_cast<Eigen::Index>(evals.size()));
  for (std::size_t i = 0; i < evals.size(); ++i) y[static_cast<Eigen::Index>(i)] = evals[i].value;
  const Eigen::ArrayXd& w = rule.weights.array();
  QuadratureMoments out;
  out.mean = (w * y).sum();
  const Eigen::ArrayXd d = y - out.mean;
  const Eigen::ArrayXd d2 = d.square();
  out.variance = (w * d2).sum();
  if (out.variance > 0.0) {
    out.skewness = (w * d2 * d).sum() / std::pow(out.variance, 1.5);
    out.kurtosis = (w * d2 * d2).sum() / (out.variance * out.variance);
  }
  return out;
}

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

double MomentAccumulator::variance() const {
  return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

std::optional<double> MomentAccumulator::skewness() const {
  if (n_ < 2 || !(m2_ > 0.0)) return std::nullopt;
  const double n = static_cast<double>(n_);
  return std::sqrt(n) * m3_ / std::pow(m2_, 1.5);
}

std::optional<double> MomentAccumulator::kurtosis() const {
  if (n_ < 2 || !(m2_ > 0.0)) return std::nullopt;
  const double n = static_cast<double>(n_);
  return n * m4_ / (m2_ * m2_);
}

MonteCarloResult monte_carlo_moments(const Model& model, std::size_t n, std::uint64_t seed,
                                     std::size_t workers, bool keep_trace) {
  if (n < 2) throw InvalidArgument("Monte Carlo needs at least two samples");
  const SamplePool pool = sample_pool(model.space(), n, seed);
  const auto evals = evaluate_points(model, pool.points, false, workers);
  MomentAccumulator acc;
  MonteCarloResult out;
  if (keep_trace) out.trace.reserve(n);
  for (const auto& e : evals) {
    acc.add(e.value);
    if (keep_trace) out.trace.push_back(e.value);
  }
  out.n = n;
  out.mean = acc.mean();
  out.variance = acc.variance();
  out.std = std::sqrt(out.variance);
  // Exactly constant samples can leave round-off in M2; treat a spread below
  // the representable resolution of the mean as zero variance.
  if (out.std <= 1e-14 * std::max(1.0, std::abs(out.mean))) {
    out.variance = 0.0;
    out.std = 0.0;
  } else {
    out.skewness = acc.skewness();
    out.kurtosis = acc.kurtosis();
  }
  out.mean_standard_error = out.std / std::sqrt(static_cast<double>(n));
  return out;
}

}  // namespace segpc
