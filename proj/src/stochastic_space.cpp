#include "segpc/stochastic_space.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "segpc/error.hpp"

namespace segpc {

Marginal::Marginal(GaussianMarginal g) : params_(g) {
  if (!(g.std > 0.0) || !std::isfinite(g.std) || !std::isfinite(g.mean)) {
    throw InvalidArgument("Gaussian marginal needs finite mean and std > 0");
  }
}

Marginal::Marginal(UniformMarginal u) : params_(u) {
  if (!(u.upper > u.lower) || !std::isfinite(u.lower) || !std::isfinite(u.upper)) {
    throw InvalidArgument("Uniform marginal needs finite bounds with upper > lower");
  }
}

MarginalKind Marginal::kind() const {
  return std::holds_alternative<GaussianMarginal>(params_) ? MarginalKind::Gaussian
                                                           : MarginalKind::Uniform;
}

double Marginal::standardize(double x) const {
  if (const auto* g = std::get_if<GaussianMarginal>(&params_)) return (x - g->mean) / g->std;
  const auto& u = std::get<UniformMarginal>(params_);
  return 2.0 * (x - u.lower) / (u.upper - u.lower) - 1.0;
}

double Marginal::destandardize(double xi) const {
  if (const auto* g = std::get_if<GaussianMarginal>(&params_)) return g->mean + g->std * xi;
  const auto& u = std::get<UniformMarginal>(params_);
  return u.lower + 0.5 * (xi + 1.0) * (u.upper - u.lower);
}

double Marginal::scale() const {
  if (const auto* g = std::get_if<GaussianMarginal>(&params_)) return g->std;
  const auto& u = std::get<UniformMarginal>(params_);
  return 0.5 * (u.upper - u.lower);
}

double Marginal::standard_pdf(double xi) const {
  if (kind() == MarginalKind::Gaussian) {
    return std::exp(-0.5 * xi * xi) / std::sqrt(2.0 * std::numbers::pi);
  }
  return (xi >= -1.0 && xi <= 1.0) ? 0.5 : 0.0;
}

bool Marginal::in_standard_domain(double xi) const {
  if (kind() == MarginalKind::Gaussian) return std::isfinite(xi);
  return xi >= -1.0 && xi <= 1.0;
}

StochasticSpace::StochasticSpace(std::vector<Marginal> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw InvalidArgument("stochastic space needs at least one marginal");
}

StochasticSpace StochasticSpace::iid(std::size_t m, const Marginal& marginal) {
  return StochasticSpace(std::vector<Marginal>(m, marginal));
}

namespace {
void check_length(std::size_t got, std::size_t m) {
  if (got != m) {
    throw InvalidArgument("point has " + std::to_string(got) + " coordinates, space has " +
                          std::to_string(m));
  }
}
}  // namespace

std::vector<double> StochasticSpace::standardize(std::span<const double> physical) const {
  check_length(physical.size(), dim());
  std::vector<double> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = marginals_[k].standardize(physical[k]);
  return out;
}

std::vector<double> StochasticSpace::destandardize(std::span<const double> standard) const {
  check_length(standard.size(), dim());
  std::vector<double> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = marginals_[k].destandardize(standard[k]);
  return out;
}

double StochasticSpace::joint_pdf(std::span<const double> standard) const {
  check_length(standard.size(), dim());
  double p = 1.0;
  for (std::size_t k = 0; k < dim(); ++k) p *= marginals_[k].standard_pdf(standard[k]);
  return p;
}

StandardSampler::StandardSampler(std::uint64_t seed) : engine_(seed) {}

double StandardSampler::unit() {
  // 53 random bits centred in their cell: never exactly 0 or 1.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double StandardSampler::standard_normal() {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * unit());
}

double StandardSampler::standard_uniform() { return 2.0 * unit() - 1.0; }

double StandardSampler::draw(const Marginal& marginal) {
  return marginal.kind() == MarginalKind::Gaussian ? standard_normal() : standard_uniform();
}

SamplePool sample_pool(const StochasticSpace& space, std::size_t q, std::uint64_t seed) {
  if (q == 0) throw InvalidArgument("sample pool size must be at least 1");
  SamplePool pool;
  pool.seed = seed;
  pool.points.resize(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(space.dim()));
  StandardSampler sampler(seed);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t k = 0; k < space.dim(); ++k) {
      pool.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          sampler.draw(space.marginal(k));
    }
  }
  return pool;
}

}  // namespace segpc
