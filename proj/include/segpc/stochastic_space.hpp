#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace segpc {

/// N(mean, std^2) input; standardized to N(0, 1).
struct GaussianMarginal {
  double mean = 0.0;
  double std = 1.0;
};

/// U(lower, upper) input; standardized to U(-1, 1).
struct UniformMarginal {
  double lower = -1.0;
  double upper = 1.0;
};

enum class MarginalKind { Gaussian, Uniform };

class Marginal {
 public:
  /// Throws InvalidArgument unless std > 0 (resp. upper > lower).
  Marginal(GaussianMarginal g);
  Marginal(UniformMarginal u);

  static Marginal standard_gaussian() { return Marginal(GaussianMarginal{0.0, 1.0}); }
  static Marginal standard_uniform() { return Marginal(UniformMarginal{-1.0, 1.0}); }

  MarginalKind kind() const;
  const std::variant<GaussianMarginal, UniformMarginal>& params() const { return params_; }

  double standardize(double x) const;
  double destandardize(double xi) const;
  /// dx/dxi of the affine map (std, or half the interval width).
  double scale() const;
  /// Density of the standard variable; zero outside [-1, 1] for Uniform.
  double standard_pdf(double xi) const;
  bool in_standard_domain(double xi) const;

 private:
  std::variant<GaussianMarginal, UniformMarginal> params_;
};

/// Independent marginals; the joint density is the product of the marginal
/// densities. Immutable once built.
class StochasticSpace {
 public:
  explicit StochasticSpace(std::vector<Marginal> marginals);

  std::size_t dim() const { return marginals_.size(); }
  const Marginal& marginal(std::size_t k) const { return marginals_[k]; }
  const std::vector<Marginal>& marginals() const { return marginals_; }

  std::vector<double> standardize(std::span<const double> physical) const;
  std::vector<double> destandardize(std::span<const double> standard) const;
  double joint_pdf(std::span<const double> standard) const;

  static StochasticSpace iid(std::size_t m, const Marginal& marginal);

 private:
  std::vector<Marginal> marginals_;
};

/// Candidate points in standard coordinates, one per row.
struct SamplePool {
  Eigen::MatrixXd points;  // q x m
  std::uint64_t seed = 0;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
};

/// Portable seeded stream of standard variates. The engine is std::mt19937_64
/// (its output sequence is fixed by the C++ standard); uniforms use the top
/// 53 bits, Gaussians use inversion through the inverse complementary error
/// function, so the stream is identical on every conforming platform.
class StandardSampler {
 public:
  explicit StandardSampler(std::uint64_t seed);

  /// Uniform on the open interval (0, 1).
  double unit();
  double standard_normal();
  double standard_uniform();  // on [-1, 1]
  double draw(const Marginal& marginal);

 private:
  std::mt19937_64 engine_;
};

/// q rows, each coordinate drawn from its standard marginal; rows are
/// generated in order from one stream, so the pool is a pure function of
/// (space, q, seed).
SamplePool sample_pool(const StochasticSpace& space, std::size_t q, std::uint64_t seed);

}  // namespace segpc
