#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segpc/regression.hpp"

namespace segpc {

struct MomentsReport {
  std::string method;
  double mean = 0.0;
  double variance = 0.0;
  double std = 0.0;
  std::optional<double> skewness;   // empty: undefined (p < 2 or zero variance)
  std::optional<double> kurtosis;   // non-excess
  std::size_t evaluation_count = 0;
};

struct BasicMoments {
  double mean;
  double variance;
};

/// mean = c_0, variance = sum_{i >= 1} c_i^2.
BasicMoments moments_from_coefficients(const PceSurrogate& surrogate);

struct HigherMomentScheme {
  enum class Kind { Auto, TensorGauss, SurrogateMc };
  Kind kind = Kind::Auto;           // Auto: tensor Gauss when m <= 4, else surrogate MC
  std::size_t samples = 1'000'000;  // surrogate MC only
  std::uint64_t seed = 0;
  bool antithetic = false;          // surrogate MC: pair every draw with its mirror -xi
};

/// Mean and variance from the coefficients; third and fourth raw moments of
/// the surrogate centred at c_0, integrated exactly by tensor Gauss with
/// ceil((4p+1)/2) points per dimension or estimated by seeded sampling of the
/// surrogate. Skewness and kurtosis are left empty for p < 2 or zero variance.
MomentsReport higher_moments(const PceSurrogate& surrogate, const HigherMomentScheme& scheme = {});

struct SobolReport {
  std::vector<double> total_indices;
};

/// Total indices sum_{alpha_i > 0} c_alpha^2 / sum_{alpha != 0} c_alpha^2; empty
/// when the variance is zero.
std::optional<SobolReport> sobol_total(const PceSurrogate& surrogate);

enum class Method { Segpc, Wlsq, Smolyak, MonteCarlo };

const char* to_string(Method method);
/// Throws InvalidArgument for unknown names.
Method parse_method(const std::string& name);

/// Evaluations charged by a method at chaos order p in m dimensions:
/// se-gPC 2 ceil((P+1)/(m+1)), WLSQ P+1, Smolyak C(2m+p, p).
/// Throws InvalidArgument for MonteCarlo, which has no order-based cost.
std::size_t predicted_cost(Method method, std::size_t m, std::size_t p);

}  // namespace segpc
