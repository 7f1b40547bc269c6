#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "segpc/error.hpp"
#include "segpc/io.hpp"
#include "segpc/model.hpp"
#include "segpc/postproc.hpp"

namespace segpc::cli {

/// Invalid or unreadable configuration. Maps to exit code 2 like every
/// InvalidArgument.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

struct RunConfig {
  std::string model = "ishigami";
  nlohmann::json model_params = nlohmann::json::object();
  std::optional<std::vector<Marginal>> space;  // replaces the model's input distribution
  Method method = Method::Segpc;
  std::size_t order = 2;
  std::vector<std::size_t> orders;             // convergence; default 1..order
  std::vector<Method> methods;                 // convergence; default segpc, wlsq, smolyak
  std::size_t pool = 10000;
  std::optional<std::uint64_t> seed;
  double oversample = 1.0;
  std::size_t workers = 1;
  std::string out = "segpc_out";
  std::size_t samples = 10000;                 // Monte Carlo model samples
  std::size_t moment_samples = 1'000'000;      // surrogate sampling for m > 4
  std::optional<std::string> reference_file;
};

/// Field-by-field validation; messages name the offending field.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads and parses a JSON file; parse errors report line and column.
nlohmann::json load_json_file(const std::string& path);

/// Built-in model from the config (ode, ishigami, burgers), wrapped in the
/// configured space when one is given. `t_override` replaces the ODE time.
std::unique_ptr<Model> make_model(const RunConfig& cfg, std::optional<double> t_override = {});

/// Analytic (or high-order quadrature) reference moments for the cheap
/// built-in models; the reference file when configured; otherwise empty.
std::optional<io::MomentsReference> reference_for(const RunConfig& cfg, const Model& model);

struct MethodResult {
  MomentsReport moments;
  std::optional<SobolReport> sobol;
  std::optional<PceSurrogate> surrogate;  // empty for Monte Carlo
};

/// Runs one estimator at chaos order p (ignored by Monte Carlo).
MethodResult run_method(const RunConfig& cfg, const Model& model, Method method, std::size_t p);

int cmd_fit(const RunConfig& cfg, std::ostream& log);
int cmd_convergence(const RunConfig& cfg, std::ostream& log);
int cmd_select_points(const RunConfig& cfg, std::ostream& log);
int cmd_mc(const RunConfig& cfg, std::ostream& log);

/// Exit code for an exception escaping a command: 2 for configuration and
/// validation errors, 3 for numerical/solver failures.
int exit_code_for(const std::exception& e) noexcept;

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace segpc::cli
