#include "segpc/io.hpp"

#include <cmath>
#include <cstdio>

#include "segpc/error.hpp"

namespace segpc::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_number(*x) : "undefined";
}

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double number_from(const nlohmann::json& v) {
  return v.is_null() ? std::nan("") : v.get<double>();
}

}  // namespace

nlohmann::json surrogate_to_json(const PceSurrogate& surrogate) {
  nlohmann::json families = nlohmann::json::array();
  for (PolyFamily f : surrogate.basis().families()) families.push_back(to_string(f));
  const FitReport& r = surrogate.report();
  nlohmann::json doc;
  doc["format"] = "segpc-surrogate";
  doc["version"] = 1;
  doc["basis"] = {{"m", surrogate.dim()},
                  {"p", surrogate.basis().order()},
                  {"families", families},
                  {"ordering", "graded, lexicographically descending within a degree"}};
  doc["coefficients"] = std::vector<double>(surrogate.coefficients().data(),
                                            surrogate.coefficients().data() +
                                                surrogate.coefficients().size());
  doc["fit_report"] = {{"method", r.method},
                       {"n_points", r.n_points},
                       {"n_equations", r.n_equations},
                       {"residual_norm", number_or_null(r.residual_norm)},
                       {"cond_number", number_or_null(r.cond_number)},
                       {"evaluation_count", r.evaluation_count}};
  return doc;
}

PceSurrogate surrogate_from_json(const nlohmann::json& doc) {
  try {
    const auto& basis = doc.at("basis");
    std::vector<PolyFamily> families;
    for (const auto& f : basis.at("families")) {
      const std::string name = f.get<std::string>();
      if (name == "hermite") {
        families.push_back(PolyFamily::Hermite);
      } else if (name == "legendre") {
        families.push_back(PolyFamily::Legendre);
      } else {
        throw InvalidArgument("unknown polynomial family '" + name + "'");
      }
    }
    if (families.size() != basis.at("m").get<std::size_t>()) {
      throw InvalidArgument("basis.m does not match the number of families");
    }
    ChaosBasis b(std::move(families), basis.at("p").get<std::size_t>());
    const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
    FitReport r;
    if (doc.contains("fit_report")) {
      const auto& fr = doc["fit_report"];
      r.method = fr.value("method", "");
      r.n_points = fr.value("n_points", std::size_t{0});
      r.n_equations = fr.value("n_equations", std::size_t{0});
      r.residual_norm = number_from(fr.value("residual_norm", nlohmann::json(nullptr)));
      r.cond_number = number_from(fr.value("cond_number", nlohmann::json(nullptr)));
      r.evaluation_count = fr.value("evaluation_count", std::size_t{0});
    }
    return PceSurrogate(std::move(b),
                        Eigen::Map<const Eigen::VectorXd>(coeffs.data(),
                                                          static_cast<Eigen::Index>(coeffs.size())),
                        std::move(r));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed surrogate document: ") + e.what());
  }
}

void write_schema_line(std::ostream& os, const std::string& schema) {
  os << "# segpc " << schema << " v" << kCsvSchemaVersion << '\n';
}

void write_plan_csv(std::ostream& os, const RankedDesign& design) {
  write_schema_line(os, "plan");
  os << "# cond_number=" << format_number(design.cond_number) << '\n';
  os << "rank,pool_index";
  for (Eigen::Index k = 0; k < design.points.cols(); ++k) os << ",xi_" << (k + 1);
  os << ",r_diag\n";
  for (std::size_t i = 0; i < design.rows.size(); ++i) {
    os << (i + 1) << ',' << design.rows[i];
    for (Eigen::Index k = 0; k < design.points.cols(); ++k) {
      os << ',' << format_number(design.points(static_cast<Eigen::Index>(i), k));
    }
    os << ',';
    if (i < design.r_diag.size()) os << format_number(design.r_diag[i]);
    os << '\n';
  }
}

void write_rule_csv(std::ostream& os, const QuadratureRule& rule) {
  write_schema_line(os, "rule");
  os << "# kind=" << rule.kind << " level=" << rule.level << '\n';
  for (std::size_t k = 0; k < rule.dim(); ++k) os << "xi_" << (k + 1) << ',';
  os << "weight\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (std::size_t k = 0; k < rule.dim(); ++k) {
      os << format_number(rule.nodes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)))
         << ',';
    }
    os << format_number(rule.weights[static_cast<Eigen::Index>(i)]) << '\n';
  }
}

nlohmann::json reference_to_json(const MomentsReference& ref) {
  nlohmann::json doc;
  doc["format"] = "segpc-reference";
  doc["version"] = 1;
  auto put = [&](const char* key, const std::optional<double>& v) {
    doc[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  put("mean", ref.mean);
  put("std", ref.std);
  put("skewness", ref.skewness);
  put("kurtosis", ref.kurtosis);
  return doc;
}

MomentsReference reference_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("reference document must be a JSON object");
  auto get = [&](const char* key) -> std::optional<double> {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_number()) throw InvalidArgument(std::string("reference field '") + key + "' must be a number");
    return doc[key].get<double>();
  };
  MomentsReference ref{get("mean"), get("std"), get("skewness"), get("kurtosis")};
  if (!ref.mean && !ref.std) throw InvalidArgument("reference has neither mean nor std");
  return ref;
}

MomentErrors moment_errors(const MomentsReport& report, const MomentsReference& ref) {
  MomentErrors e;
  auto rel = [](double x, double r) { return r != 0.0 ? std::abs(x - r) / std::abs(r) : std::abs(x); };
  if (ref.mean) e.mean = rel(report.mean, *ref.mean);
  if (ref.std) e.std = rel(report.std, *ref.std);
  if (ref.skewness && report.skewness) e.skewness = std::abs(*report.skewness - *ref.skewness);
  if (ref.kurtosis && report.kurtosis) e.kurtosis = rel(*report.kurtosis, *ref.kurtosis);
  return e;
}

void write_moments_header(std::ostream& os, std::size_t sobol_dims) {
  write_schema_line(os, "moments");
  os << "model,method,m,p,evaluation_count,mean,std,skewness,kurtosis,"
        "err_mean,err_std,err_skewness,err_kurtosis";
  for (std::size_t k = 0; k < sobol_dims; ++k) os << ",S" << (k + 1) << 'T';
  os << ",status\n";
}

void write_moments_row(std::ostream& os, const std::string& model, std::size_t m,
                       std::optional<std::size_t> p, const MomentsReport& report,
                       const MomentErrors& errors, const std::optional<SobolReport>& sobol,
                       std::size_t sobol_dims) {
  auto blank_if_empty = [](const std::optional<double>& x) {
    return x ? format_number(*x) : std::string();
  };
  os << model << ',' << report.method << ',' << m << ',';
  if (p) os << *p;
  os << ',' << report.evaluation_count << ',' << format_number(report.mean) << ','
     << format_number(report.std) << ',' << format_optional(report.skewness) << ','
     << format_optional(report.kurtosis) << ',' << blank_if_empty(errors.mean) << ','
     << blank_if_empty(errors.std) << ',' << blank_if_empty(errors.skewness) << ','
     << blank_if_empty(errors.kurtosis);
  for (std::size_t k = 0; k < sobol_dims; ++k) {
    os << ',';
    if (sobol && k < sobol->total_indices.size()) os << format_number(sobol->total_indices[k]);
  }
  os << ",ok\n";
}

void write_failed_row(std::ostream& os, const std::string& model, std::size_t m,
                      std::optional<std::size_t> p, const std::string& method,
                      const std::string& status, std::size_t sobol_dims) {
  os << model << ',' << method << ',' << m << ',';
  if (p) os << *p;
  os << std::string(9 + sobol_dims, ',') << status << '\n';
}

void write_burgers_csv(std::ostream& os, const BurgersState& state) {
  write_schema_line(os, "burgers-field");
  os << "# grid=" << state.grid << " re=" << format_number(state.re) << '\n';
  os << "x,y,u,v\n";
  const double h = state.h();
  for (int i = 0; i < state.grid; ++i) {
    for (int j = 0; j < state.grid; ++j) {
      os << format_number(i * h) << ',' << format_number(j * h) << ','
         << format_number(state.u(i, j)) << ',' << format_number(state.v(i, j)) << '\n';
    }
  }
}

}  // namespace segpc::io
