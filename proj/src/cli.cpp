#include "segpc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "segpc/burgers.hpp"
#include "segpc/design.hpp"
#include "segpc/models.hpp"
#include "segpc/quadrature.hpp"
#include "segpc/regression.hpp"

namespace segpc::cli {
namespace {

// A model evaluated over a different input distribution than its own.
class RespacedModel : public Model {
 public:
  RespacedModel(std::unique_ptr<Model> inner, StochasticSpace space)
      : inner_(std::move(inner)), space_(std::move(space)) {
    if (space_.dim() != inner_->dim()) {
      throw ConfigError("space has " + std::to_string(space_.dim()) + " marginals, model '" +
                        inner_->name() + "' has " + std::to_string(inner_->dim()) + " inputs");
    }
  }
  std::string name() const override { return inner_->name(); }
  const StochasticSpace& space() const override { return space_; }
  bool has_gradient() const override { return inner_->has_gradient(); }
  PhysicalEvaluation evaluate_physical(std::span<const double> x,
                                       bool with_gradient) const override {
    return inner_->evaluate_physical(x, with_gradient);
  }

 private:
  std::unique_ptr<Model> inner_;
  StochasticSpace space_;
};

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

std::size_t get_count(const nlohmann::json& v, const std::string& field, std::size_t min) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    field_error(field, "expected an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

double get_real(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

std::string get_string(const nlohmann::json& v, const std::string& field) {
  if (!v.is_string()) field_error(field, "expected a string");
  return v.get<std::string>();
}

Method get_method(const nlohmann::json& v, const std::string& field) {
  try {
    return parse_method(get_string(v, field));
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    field_error(field, e.what());
  }
}

Marginal get_marginal(const nlohmann::json& v, const std::string& field) {
  if (!v.is_object()) field_error(field, "expected an object");
  const std::string kind = v.contains("kind") ? get_string(v["kind"], field + ".kind") : "";
  try {
    if (kind == "gaussian") {
      return Marginal(GaussianMarginal{get_real(v.value("mean", nlohmann::json(0.0)), field + ".mean"),
                                       get_real(v.value("std", nlohmann::json(1.0)), field + ".std")});
    }
    if (kind == "uniform") {
      return Marginal(UniformMarginal{get_real(v.value("lower", nlohmann::json(-1.0)), field + ".lower"),
                                      get_real(v.value("upper", nlohmann::json(1.0)), field + ".upper")});
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    field_error(field, e.what());
  }
  field_error(field + ".kind", "expected \"gaussian\" or \"uniform\"");
}

const char* model_names = "ode, ishigami or burgers";

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "model", "space", "method", "order", "orders", "methods", "pool", "seed", "oversample",
      "workers", "out", "samples", "moment_samples", "reference_file"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      field_error(key, "unknown field");
    }
  }

  RunConfig cfg;
  if (doc.contains("model")) {
    const auto& m = doc["model"];
    if (m.is_string()) {
      cfg.model = m.get<std::string>();
    } else if (m.is_object()) {
      cfg.model = get_string(m.value("name", nlohmann::json()), "model.name");
      cfg.model_params = m;
      cfg.model_params.erase("name");
    } else {
      field_error("model", "expected a name or an object with a \"name\"");
    }
  }
  if (cfg.model != "ode" && cfg.model != "ishigami" && cfg.model != "burgers") {
    field_error("model.name", "unknown model '" + cfg.model + "' (expected " + model_names + ")");
  }
  if (doc.contains("space")) {
    if (!doc["space"].is_array() || doc["space"].empty()) {
      field_error("space", "expected a non-empty array of marginals");
    }
    std::vector<Marginal> marginals;
    for (std::size_t k = 0; k < doc["space"].size(); ++k) {
      marginals.push_back(get_marginal(doc["space"][k], "space[" + std::to_string(k) + "]"));
    }
    cfg.space = std::move(marginals);
  }
  if (doc.contains("method")) cfg.method = get_method(doc["method"], "method");
  if (doc.contains("order")) cfg.order = get_count(doc["order"], "order", 0);
  if (doc.contains("orders")) {
    if (!doc["orders"].is_array()) field_error("orders", "expected an array of integers");
    for (std::size_t i = 0; i < doc["orders"].size(); ++i) {
      cfg.orders.push_back(get_count(doc["orders"][i], "orders[" + std::to_string(i) + "]", 0));
    }
  }
  if (doc.contains("methods")) {
    if (!doc["methods"].is_array()) field_error("methods", "expected an array of method names");
    for (std::size_t i = 0; i < doc["methods"].size(); ++i) {
      cfg.methods.push_back(get_method(doc["methods"][i], "methods[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("pool")) cfg.pool = get_count(doc["pool"], "pool", 1);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) field_error("seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("oversample")) {
    cfg.oversample = get_real(doc["oversample"], "oversample");
    if (!(cfg.oversample >= 1.0)) field_error("oversample", "must be >= 1");
  }
  if (doc.contains("workers")) cfg.workers = get_count(doc["workers"], "workers", 1);
  if (doc.contains("out")) cfg.out = get_string(doc["out"], "out");
  if (doc.contains("samples")) cfg.samples = get_count(doc["samples"], "samples", 0);
  if (doc.contains("moment_samples")) {
    cfg.moment_samples = get_count(doc["moment_samples"], "moment_samples", 2);
  }
  if (doc.contains("reference_file")) {
    cfg.reference_file = get_string(doc["reference_file"], "reference_file");
  }
  return cfg;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": JSON parse error: " + e.what());
  }
}

std::unique_ptr<Model> make_model(const RunConfig& cfg, std::optional<double> t_override) {
  const auto& p = cfg.model_params;
  auto real = [&](const char* key, double fallback) {
    return p.contains(key) ? get_real(p[key], std::string("model.") + key) : fallback;
  };
  std::unique_ptr<Model> model;
  try {
    if (cfg.model == "ode") {
      model = std::make_unique<OdeModel>(t_override ? *t_override : real("t", 1.0));
    } else if (cfg.model == "ishigami") {
      model = std::make_unique<IshigamiModel>(real("alpha", 7.0), real("beta", 0.1));
    } else if (cfg.model == "burgers") {
      BurgersOptions opt;
      if (p.contains("grid")) opt.grid = static_cast<int>(get_count(p["grid"], "model.grid", 5));
      opt.re = real("re", opt.re);
      opt.tolerance = real("tolerance", opt.tolerance);
      if (p.contains("max_iterations")) {
        opt.max_iterations = static_cast<int>(get_count(p["max_iterations"], "model.max_iterations", 1));
      }
      if (p.contains("means")) {
        if (!p["means"].is_array()) field_error("model.means", "expected an array of numbers");
        std::vector<double> means;
        for (std::size_t i = 0; i < p["means"].size(); ++i) {
          means.push_back(get_real(p["means"][i], "model.means[" + std::to_string(i) + "]"));
        }
        model = std::make_unique<BurgersModel>(std::move(means), opt);
      } else {
        const std::size_t m = p.contains("m") ? get_count(p["m"], "model.m", 1) : 10;
        model = std::make_unique<BurgersModel>(m, opt);
      }
    } else {
      field_error("model.name", "unknown model '" + cfg.model + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("model parameters: ") + e.what());
  }
  if (cfg.space) return std::make_unique<RespacedModel>(std::move(model), StochasticSpace(*cfg.space));
  return model;
}

std::optional<io::MomentsReference> reference_for(const RunConfig& cfg, const Model& model) {
  if (cfg.reference_file) return io::reference_from_json(load_json_file(*cfg.reference_file));
  if (cfg.space) return std::nullopt;  // analytic values assume the built-in inputs
  if (const auto* ode = dynamic_cast<const OdeModel*>(&model)) {
    const QuadratureMoments q = quadrature_moments(model, tensor_rule({PolyFamily::Legendre}, 64));
    io::MomentsReference ref;
    ref.mean = OdeModel::exact_mean(ode->t());
    ref.std = std::sqrt(OdeModel::exact_variance(ode->t()));
    ref.skewness = q.skewness;
    ref.kurtosis = q.kurtosis;
    return ref;
  }
  if (const auto* ish = dynamic_cast<const IshigamiModel*>(&model)) {
    const std::vector<PolyFamily> legendre(3, PolyFamily::Legendre);
    const QuadratureMoments q = quadrature_moments(model, tensor_rule(legendre, 40), cfg.workers);
    io::MomentsReference ref;
    ref.mean = ish->exact_mean();
    ref.std = std::sqrt(ish->exact_variance());
    ref.skewness = q.skewness;
    ref.kurtosis = q.kurtosis;
    return ref;
  }
  return std::nullopt;
}

namespace {

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw ConfigError("a seed is required (--seed or config field 'seed')");
  return *cfg.seed;
}

std::filesystem::path out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + cfg.out + "': " + ec.message());
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  return os;
}

HigherMomentScheme scheme_for(const RunConfig& cfg) {
  HigherMomentScheme s;
  s.samples = cfg.moment_samples;
  s.seed = cfg.seed.value_or(0);
  return s;
}

}  // namespace

MethodResult run_method(const RunConfig& cfg, const Model& model, Method method, std::size_t p) {
  const std::uint64_t seed = require_seed(cfg);
  const StochasticSpace& space = model.space();
  MethodResult out;
  if (method == Method::MonteCarlo) {
    const MonteCarloResult mc = monte_carlo_moments(model, cfg.samples, seed, cfg.workers);
    out.moments.method = "mc";
    out.moments.mean = mc.mean;
    out.moments.variance = mc.variance;
    out.moments.std = mc.std;
    out.moments.skewness = mc.skewness;
    out.moments.kurtosis = mc.kurtosis;
    out.moments.evaluation_count = mc.n;
    return out;
  }

  const ChaosBasis basis(space, p);
  if (method == Method::Segpc || method == Method::Wlsq) {
    if (method == Method::Segpc && !model.has_gradient()) {
      throw ConfigError("method segpc needs a gradient-capable model");
    }
    const std::size_t n = method == Method::Segpc
                              ? segpc_point_count(basis.size(), basis.dim(), cfg.oversample)
                              : wlsq_point_count(basis.size(), cfg.oversample);
    const RankedDesign design = rank_design(space, basis, cfg.pool, seed, n);
    out.surrogate = method == Method::Segpc
                        ? fit_segpc(basis, design.points, design.w_sqrt, model, cfg.oversample,
                                    cfg.workers)
                        : fit_wlsq_model(basis, design.points, design.w_sqrt, model,
                                         cfg.oversample, cfg.workers);
  } else {
    const QuadratureRule rule = smolyak_rule(basis.families(), p + 1);
    out.surrogate = quadrature_fit(basis, rule, model, cfg.workers);
  }
  out.moments = higher_moments(*out.surrogate, scheme_for(cfg));
  out.sobol = sobol_total(*out.surrogate);
  return out;
}

int cmd_fit(const RunConfig& cfg, std::ostream& log) {
  require_seed(cfg);
  const auto dir = out_dir(cfg);

  // ODE time grid: one fit per time, mean/variance against the closed forms.
  if (cfg.model == "ode" && cfg.model_params.contains("t_grid")) {
    const auto& grid = cfg.model_params["t_grid"];
    if (!grid.is_array() || grid.empty()) field_error("model.t_grid", "expected a non-empty array");
    auto csv = open_out(dir / "ode_tgrid.csv");
    io::write_schema_line(csv, "ode-tgrid");
    csv << "t,method,p,evaluation_count,mean,variance,exact_mean,exact_variance,"
           "rel_err_mean,rel_err_variance\n";
    double worst_mean = 0.0;
    double worst_var = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = get_real(grid[i], "model.t_grid[" + std::to_string(i) + "]");
      const auto model = make_model(cfg, t);
      const MethodResult r = run_method(cfg, *model, cfg.method, cfg.order);
      const double em = OdeModel::exact_mean(t);
      const double ev = OdeModel::exact_variance(t);
      const double err_m = std::abs(r.moments.mean - em) / std::abs(em);
      const double err_v = ev > 0.0 ? std::abs(r.moments.variance - ev) / ev
                                    : std::abs(r.moments.variance);
      worst_mean = std::max(worst_mean, err_m);
      worst_var = std::max(worst_var, err_v);
      csv << io::format_number(t) << ',' << r.moments.method << ',' << cfg.order << ','
          << r.moments.evaluation_count << ',' << io::format_number(r.moments.mean) << ','
          << io::format_number(r.moments.variance) << ',' << io::format_number(em) << ','
          << io::format_number(ev) << ',' << io::format_number(err_m) << ','
          << io::format_number(err_v) << '\n';
    }
    log << "ode t-grid: " << grid.size() << " fits, max relative error mean "
        << io::format_number(worst_mean) << ", variance " << io::format_number(worst_var) << '\n';
    return kExitOk;
  }

  const auto model = make_model(cfg);
  const MethodResult r = run_method(cfg, *model, cfg.method, cfg.order);
  const auto ref = reference_for(cfg, *model);
  const io::MomentErrors errors = ref ? io::moment_errors(r.moments, *ref) : io::MomentErrors{};

  if (r.surrogate) {
    auto js = open_out(dir / "surrogate.json");
    js << io::surrogate_to_json(*r.surrogate).dump(2) << '\n';
  }
  auto csv = open_out(dir / "moments.csv");
  io::write_moments_header(csv, model->dim());
  const std::optional<std::size_t> p =
      cfg.method == Method::MonteCarlo ? std::nullopt : std::optional<std::size_t>(cfg.order);
  io::write_moments_row(csv, model->name(), model->dim(), p, r.moments, errors, r.sobol,
                        model->dim());
  log << model->name() << ' ' << r.moments.method << " p=" << cfg.order
      << " evaluations=" << r.moments.evaluation_count
      << " mean=" << io::format_number(r.moments.mean)
      << " std=" << io::format_number(r.moments.std) << '\n';
  return kExitOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& log) {
  require_seed(cfg);
  const auto model = make_model(cfg);
  const auto ref = reference_for(cfg, *model);
  if (!ref) {
    throw ConfigError("convergence needs reference moments: model '" + model->name() +
                      "' has no analytic reference, set 'reference_file'");
  }
  std::vector<std::size_t> orders = cfg.orders;
  if (orders.empty()) {
    for (std::size_t p = 1; p <= std::max<std::size_t>(cfg.order, 1); ++p) orders.push_back(p);
  }
  std::vector<Method> methods = cfg.methods;
  if (methods.empty()) methods = {Method::Segpc, Method::Wlsq, Method::Smolyak};
  for (Method m : methods) {
    if (m == Method::MonteCarlo) field_error("methods", "mc has no chaos order; use the mc command");
    if (m == Method::Segpc && !model->has_gradient()) {
      throw ConfigError("method segpc needs a gradient-capable model");
    }
  }

  const auto dir = out_dir(cfg);
  auto csv = open_out(dir / "convergence.csv");
  io::write_moments_header(csv, 0);
  for (Method method : methods) {
    for (std::size_t p : orders) {
      // A numerically failed fit (a rank-deficient minimal se-gPC system,
      // say) is recorded and the sweep goes on; invalid input still aborts.
      try {
        const MethodResult r = run_method(cfg, *model, method, p);
        io::write_moments_row(csv, model->name(), model->dim(), p, r.moments,
                              io::moment_errors(r.moments, *ref), std::nullopt, 0);
        log << to_string(method) << " p=" << p << " evaluations=" << r.moments.evaluation_count
            << '\n';
      } catch (const Error& e) {
        if (exit_code_for(e) != kExitSolver) throw;
        io::write_failed_row(csv, model->name(), model->dim(), p, to_string(method),
                             to_string(e.kind()), 0);
        log << to_string(method) << " p=" << p << " failed: " << e.what() << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_select_points(const RunConfig& cfg, std::ostream& log) {
  const std::uint64_t seed = require_seed(cfg);
  // Point selection needs only a space; a configured one stands alone.
  const StochasticSpace space = cfg.space ? StochasticSpace(*cfg.space) : make_model(cfg)->space();
  const ChaosBasis basis(space, cfg.order);
  const RankedDesign design = rank_design(space, basis, cfg.pool, seed,
                                          wlsq_point_count(basis.size(), cfg.oversample));
  const auto dir = out_dir(cfg);
  auto csv = open_out(dir / "plan.csv");
  io::write_plan_csv(csv, design);
  log << "selected " << design.rows.size() << " of " << cfg.pool
      << " points, cond_number=" << io::format_number(design.cond_number) << '\n';
  return kExitOk;
}

int cmd_mc(const RunConfig& cfg, std::ostream& log) {
  const std::uint64_t seed = require_seed(cfg);
  if (cfg.samples < 2) throw ConfigError("config field 'samples': Monte Carlo needs at least 2");
  const auto model = make_model(cfg);
  const MonteCarloResult mc = monte_carlo_moments(*model, cfg.samples, seed, cfg.workers, true);

  MomentsReport rep;
  rep.method = "mc";
  rep.mean = mc.mean;
  rep.variance = mc.variance;
  rep.std = mc.std;
  rep.skewness = mc.skewness;
  rep.kurtosis = mc.kurtosis;
  rep.evaluation_count = mc.n;
  const auto dir = out_dir(cfg);
  {
    std::optional<io::MomentsReference> ref;
    if (!cfg.reference_file) ref = reference_for(cfg, *model);
    auto csv = open_out(dir / "moments.csv");
    io::write_moments_header(csv, 0);
    io::write_moments_row(csv, model->name(), model->dim(), std::nullopt, rep,
                          ref ? io::moment_errors(rep, *ref) : io::MomentErrors{}, std::nullopt, 0);
  }
  {
    auto csv = open_out(dir / "trace.csv");
    io::write_schema_line(csv, "trace");
    csv << "sample,value\n";
    for (std::size_t i = 0; i < mc.trace.size(); ++i) {
      csv << i << ',' << io::format_number(mc.trace[i]) << '\n';
    }
  }
  {
    io::MomentsReference ref{mc.mean, mc.std, mc.skewness, mc.kurtosis};
    nlohmann::json doc = io::reference_to_json(ref);
    doc["model"] = model->name();
    doc["samples"] = mc.n;
    doc["seed"] = seed;
    doc["mean_standard_error"] = mc.mean_standard_error;
    auto js = open_out(dir / "reference.json");
    js << doc.dump(2) << '\n';
  }
  log << model->name() << " mc n=" << mc.n << " mean=" << io::format_number(mc.mean)
      << " std=" << io::format_number(mc.std) << '\n';
  return kExitOk;
}

int exit_code_for(const std::exception& e) noexcept {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Size:
        return kExitConfig;
      default:
        return kExitSolver;
    }
  }
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kExitConfig;
  return kExitSolver;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sensitivity-enhanced polynomial chaos: fits, convergence studies, QR point "
               "selection and Monte Carlo baselines"};
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::string method;
    std::string orders;
    std::string reference;
    std::uint64_t seed = 0;
    std::size_t workers = 0;
    std::size_t order = 0;
    std::size_t pool = 0;
    std::size_t samples = 0;
    double oversample = 0.0;
    std::string out;
  } f;

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("fit", "fit one surrogate and report its moments"));
  subs.push_back(app.add_subcommand("convergence", "moment errors against evaluations over orders"));
  subs.push_back(app.add_subcommand("select-points", "QR-ranked design points as CSV"));
  subs.push_back(app.add_subcommand("mc", "Monte Carlo moments, trace and reference file"));
  std::vector<std::pair<CLI::App*, std::vector<CLI::Option*>>> opts;
  for (CLI::App* sub : subs) {
    std::vector<CLI::Option*> o;
    o.push_back(sub->add_option("--config", f.config, "JSON run configuration"));
    o.push_back(sub->add_option("--seed", f.seed, "seed for pools and sampling"));
    o.push_back(sub->add_option("--workers", f.workers, "threads for model evaluations")
                    ->check(CLI::PositiveNumber));
    o.push_back(sub->add_option("--out", f.out, "output directory"));
    o.push_back(sub->add_option("--method", f.method, "segpc, wlsq, smolyak or mc"));
    o.push_back(sub->add_option("--order", f.order, "chaos order p"));
    o.push_back(sub->add_option("--pool", f.pool, "candidate pool size q")->check(CLI::PositiveNumber));
    o.push_back(sub->add_option("--oversample", f.oversample, "oversampling ratio (>= 1)"));
    o.push_back(sub->add_option("--samples", f.samples, "Monte Carlo sample count"));
    o.push_back(sub->add_option("--orders", f.orders, "comma-separated chaos orders (convergence)"));
    o.push_back(sub->add_option("--reference", f.reference, "reference moments JSON (convergence)"));
    opts.emplace_back(sub, std::move(o));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CLI::App* sub = nullptr;
    std::vector<CLI::Option*>* o = nullptr;
    for (auto& [s, list] : opts) {
      if (s->parsed()) {
        sub = s;
        o = &list;
      }
    }
    auto given = [&](std::size_t i) { return (*o)[i]->count() > 0; };

    nlohmann::json doc = nlohmann::json::object();
    if (given(0)) doc = load_json_file(f.config);
    RunConfig cfg = parse_config(doc);
    if (given(1)) cfg.seed = f.seed;
    if (given(2)) cfg.workers = f.workers;
    if (given(3)) cfg.out = f.out;
    if (given(4)) cfg.method = parse_method(f.method);
    if (given(5)) cfg.order = f.order;
    if (given(6)) cfg.pool = f.pool;
    if (given(7)) {
      if (!(f.oversample >= 1.0)) throw ConfigError("--oversample must be >= 1");
      cfg.oversample = f.oversample;
    }
    if (given(8)) cfg.samples = f.samples;
    if (given(9)) {
      cfg.orders.clear();
      std::stringstream ss(f.orders);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t pos = 0;
          const long v = std::stol(item, &pos);
          if (pos != item.size() || v < 0) throw std::invalid_argument(item);
          cfg.orders.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
          throw ConfigError("--orders: '" + item + "' is not a non-negative integer");
        }
      }
    }
    if (given(10)) cfg.reference_file = f.reference;

    const std::string name = sub->get_name();
    if (name == "fit") return cmd_fit(cfg, out);
    if (name == "convergence") return cmd_convergence(cfg, out);
    if (name == "select-points") return cmd_select_points(cfg, out);
    return cmd_mc(cfg, out);
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    if (const auto* ek = dynamic_cast<const Error*>(&e)) {
      err << "error (" << to_string(ek->kind()) << "): " << e.what() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return code;
  }
}

}  // namespace segpc::cli
