#pragma once

// Serialization of surrogates, plans, rules, reports and Burgers fields.
// Every CSV starts with one `#` line naming the schema and its version;
// numbers are written with 17 significant digits so files round-trip and
// identical runs produce identical bytes.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segpc/burgers.hpp"
#include "segpc/design.hpp"
#include "segpc/postproc.hpp"
#include "segpc/quadrature.hpp"
#include "segpc/regression.hpp"

namespace segpc::io {

inline constexpr int kCsvSchemaVersion = 1;

/// %.17g, or "nan"/"inf"/"-inf".
std::string format_number(double x);
/// format_number, or "undefined" when empty.
std::string format_optional(const std::optional<double>& x);

nlohmann::json surrogate_to_json(const PceSurrogate& surrogate);
/// Throws InvalidArgument on a malformed document.
PceSurrogate surrogate_from_json(const nlohmann::json& doc);

void write_schema_line(std::ostream& os, const std::string& schema);

/// rank, pool_index, xi_1..xi_m, r_diag (blank past the first QR round);
/// the condition number goes in a second comment line.
void write_plan_csv(std::ostream& os, const RankedDesign& design);

void write_rule_csv(std::ostream& os, const QuadratureRule& rule);

/// Reference values for error columns; members left empty are skipped.
struct MomentsReference {
  std::optional<double> mean;
  std::optional<double> std;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
};

nlohmann::json reference_to_json(const MomentsReference& ref);
MomentsReference reference_from_json(const nlohmann::json& doc);

/// Errors against a reference: relative for mean, std and kurtosis, absolute
/// for skewness (whose reference is often zero).
struct MomentErrors {
  std::optional<double> mean;
  std::optional<double> std;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
};

MomentErrors moment_errors(const MomentsReport& report, const MomentsReference& ref);

/// Header and rows of the moments table: model, method, m, p,
/// evaluation_count, mean, std, skewness, kurtosis, err_* columns, then
/// S1T..SmT when `sobol_dims` > 0, then a status column ("ok" or the error
/// kind of a failed fit, whose numeric columns are left blank).
void write_moments_header(std::ostream& os, std::size_t sobol_dims);
void write_moments_row(std::ostream& os, const std::string& model, std::size_t m,
                       std::optional<std::size_t> p, const MomentsReport& report,
                       const MomentErrors& errors, const std::optional<SobolReport>& sobol,
                       std::size_t sobol_dims);
void write_failed_row(std::ostream& os, const std::string& model, std::size_t m,
                      std::optional<std::size_t> p, const std::string& method,
                      const std::string& status, std::size_t sobol_dims);

/// x, y, u, v per grid node.
void write_burgers_csv(std::ostream& os, const BurgersState& state);

}  // namespace segpc::io
