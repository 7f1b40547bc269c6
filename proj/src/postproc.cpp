#include "segpc/postproc.hpp"

#include <cmath>

#include "segpc/error.hpp"
#include "segpc/orthopoly.hpp"
#include "segpc/quadrature.hpp"

namespace segpc {

BasicMoments moments_from_coefficients(const PceSurrogate& surrogate) {
  const Eigen::VectorXd& c = surrogate.coefficients();
  return {c[0], c.tail(c.size() - 1).squaredNorm()};
}

namespace {

struct CentredSums {
  double m3 = 0.0;
  double m4 = 0.0;
};

CentredSums tensor_moments(const PceSurrogate& s) {
  const std::size_t npd = (4 * s.basis().order() + 2) / 2;
  const QuadratureRule rule = tensor_rule(s.basis().families(), npd);
  const Eigen::VectorXd d = s.eval_rows(rule.nodes).array() - s.coefficients()[0];
  const Eigen::ArrayXd d2 = d.array().square();
  return {(rule.weights.array() * d2 * d.array()).sum(), (rule.weights.array() * d2 * d2).sum()};
}

CentredSums sampled_moments(const PceSurrogate& s, const HigherMomentScheme& scheme) {
  if (scheme.samples < 2) throw InvalidArgument("surrogate sampling needs at least two samples");
  const std::size_t m = s.dim();
  const auto& families = s.basis().families();
  const double c0 = s.coefficients()[0];
  StandardSampler sampler(scheme.seed);
  std::vector<double> xi(m);
  std::vector<double> row(s.basis().size());
  const Eigen::VectorXd& c = s.coefficients();
  double sum3 = 0.0;
  double sum4 = 0.0;
  std::size_t count = 0;
  auto accumulate = [&] {
    s.basis().eval_into(xi, row);
    const double d = Eigen::Map<const Eigen::VectorXd>(row.data(), c.size()).dot(c) - c0;
    const double d2 = d * d;
    sum3 += d2 * d;
    sum4 += d2 * d2;
    ++count;
  };
  while (count < scheme.samples) {
    for (std::size_t k = 0; k < m; ++k) {
      xi[k] = families[k] == PolyFamily::Hermite ? sampler.standard_normal()
                                                 : sampler.standard_uniform();
    }
    accumulate();
    if (scheme.antithetic && count < scheme.samples) {
      for (double& x : xi) x = -x;
      accumulate();
    }
  }
  const double n = static_cast<double>(count);
  return {sum3 / n, sum4 / n};
}

}  // namespace

MomentsReport higher_moments(const PceSurrogate& surrogate, const HigherMomentScheme& scheme) {
  const BasicMoments basic = moments_from_coefficients(surrogate);
  MomentsReport out;
  out.method = surrogate.report().method;
  out.evaluation_count = surrogate.report().evaluation_count;
  out.mean = basic.mean;
  out.variance = basic.variance;
  out.std = std::sqrt(basic.variance);
  if (surrogate.basis().order() < 2 || !(basic.variance > 0.0)) return out;

  bool use_tensor = surrogate.dim() <= 4;
  if (scheme.kind == HigherMomentScheme::Kind::TensorGauss) use_tensor = true;
  if (scheme.kind == HigherMomentScheme::Kind::SurrogateMc) use_tensor = false;
  const CentredSums sums = use_tensor ? tensor_moments(surrogate) : sampled_moments(surrogate, scheme);

  // Central moments about the exact mean c_0 of the surrogate.
  out.skewness = sums.m3 / (basic.variance * out.std);
  out.kurtosis = sums.m4 / (basic.variance * basic.variance);
  return out;
}

std::optional<SobolReport> sobol_total(const PceSurrogate& surrogate) {
  const BasicMoments basic = moments_from_coefficients(surrogate);
  if (!(basic.variance > 0.0)) return std::nullopt;
  const auto& set = surrogate.basis().index_set();
  const Eigen::VectorXd& c = surrogate.coefficients();
  SobolReport out;
  out.total_indices.assign(surrogate.dim(), 0.0);
  for (std::size_t j = 1; j < set.size(); ++j) {
    const double c2 = c[static_cast<Eigen::Index>(j)] * c[static_cast<Eigen::Index>(j)];
    for (std::size_t k = 0; k < surrogate.dim(); ++k) {
      if (set[j][k] > 0) out.total_indices[k] += c2;
    }
  }
  for (double& t : out.total_indices) t /= basic.variance;
  return out;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Segpc: return "segpc";
    case Method::Wlsq: return "wlsq";
    case Method::Smolyak: return "smolyak";
    case Method::MonteCarlo: return "mc";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "segpc") return Method::Segpc;
  if (name == "wlsq") return Method::Wlsq;
  if (name == "smolyak") return Method::Smolyak;
  if (name == "mc") return Method::MonteCarlo;
  throw InvalidArgument("unknown method '" + name + "' (expected segpc, wlsq, smolyak or mc)");
}

std::size_t predicted_cost(Method method, std::size_t m, std::size_t p) {
  switch (method) {
    case Method::Segpc: {
      const std::size_t terms = index_set_size(m, p);
      return 2 * ((terms + m) / (m + 1));
    }
    case Method::Wlsq:
      return index_set_size(m, p);
    case Method::Smolyak:
      // C(2m + p, p): the number of total-degree-p monomials in 2m variables.
      return index_set_size(2 * m, p);
    case Method::MonteCarlo:
      break;
  }
  throw InvalidArgument("Monte Carlo cost is set by the sample count, not the chaos order");
}

}  // namespace segpc
