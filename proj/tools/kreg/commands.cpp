#include "kreg/commands.hpp"

#include "kreg/convergence.hpp"
#include "kreg/errors.hpp"
#include "kreg/experiment_config.hpp"
#include "kreg/interpolant.hpp"
#include "kreg/io.hpp"
#include "kreg/kernel.hpp"
#include "kreg/rate.hpp"
#include "kreg/svg_plot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace kreg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = KREG_VERSION;

// Overrides shared by converge and counterexample.
struct RunOptions {
  std::string config_path;
  std::string manifest_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> jitter;
  std::optional<std::size_t> grid;
  unsigned threads = 1;
};

struct FitOptionsCli {
  std::string kernel;
  std::string points;
  std::string values;
  std::string out;
  std::string jitter = "none";
  bool refine = false;
};

struct EvaluateOptions {
  std::string interpolant;
  std::string points;
};

struct RateOptions {
  std::string records;
  std::string quantity = "sup_err";
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }
  return parse_json_text(text, path);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path);
  return in;
}

fs::path resolve_out_dir(const std::string& requested) {
  if (!requested.empty()) return requested;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "kreg-out";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Resolves config + overrides, either directly or through a run manifest.
ExperimentConfig load_experiment(RunOptions& options) {
  if (!options.manifest_path.empty()) {
    const json manifest = load_json_file(options.manifest_path);
    if (!manifest.contains("config") || !manifest["config"].is_string()) {
      throw ConfigError("manifest lacks a \"config\" path");
    }
    options.config_path = manifest["config"].get<std::string>();
    if (!options.seed && manifest.contains("seeds")) {
      options.seed = manifest["seeds"].value("master", std::uint64_t{0});
    }
    if (manifest.contains("overrides")) {
      const json& o = manifest["overrides"];
      if (!options.jitter && o.contains("jitter") && o["jitter"].is_string()) {
        options.jitter = o["jitter"].get<std::string>();
      }
      if (!options.grid && o.contains("grid") && o["grid"].is_number_unsigned()) {
        options.grid = o["grid"].get<std::size_t>();
      }
    }
  }
  if (options.config_path.empty()) throw ConfigError("no config given");
  ExperimentConfig config = config_from_json(load_json_file(options.config_path));
  if (options.seed) config.seed = *options.seed;
  if (options.jitter) config.jitter = parse_jitter(*options.jitter);
  if (options.grid) config.domain = config.domain.with_resolution(*options.grid);
  return config;
}

json manifest_json(const RunOptions& options, const ExperimentConfig& config, const fs::path& out_dir,
                   const std::string& command) {
  const ResolvedSeeds seeds = resolve_seeds(config.seed);
  json manifest;
  manifest["command"] = command;
  std::error_code ec;
  const fs::path config_path = fs::absolute(options.config_path, ec);
  manifest["config"] = ec ? options.config_path : config_path.string();
  manifest["output_dir"] = out_dir.string();
  manifest["timestamp"] = utc_timestamp();
  manifest["tool_version"] = kVersion;
  manifest["seeds"] = {{"master", seeds.master},
                       {"sequence", seeds.sequence},
                       {"target", seeds.target},
                       {"holder", seeds.holder},
                       {"rule", "splitmix64(master ^ fnv1a64(stream))"}};
  json overrides = json::object();
  if (options.jitter) overrides["jitter"] = *options.jitter;
  if (options.grid) overrides["grid"] = *options.grid;
  manifest["overrides"] = std::move(overrides);
  return manifest;
}

std::string records_csv(const ConvergenceRun& run) {
  std::ostringstream csv;
  write_records_csv(csv, run.records);
  if (!run.complete()) {
    csv << "# incomplete: solver failed at n=" << *run.failed_n << ": " << run.failure << '\n';
  }
  return csv.str();
}

void print_records(std::ostream& out, const ConvergenceRun& run) {
  out << std::setw(6) << "n" << std::setw(14) << "h_n" << std::setw(14) << "eta_n" << std::setw(14)
      << "sup_err" << std::setw(14) << "bound_k" << std::setw(14) << "bound_holder" << std::setw(12)
      << "cond_est" << '\n';
  out << std::scientific << std::setprecision(4);
  for (const auto& r : run.records) {
    out << std::setw(6) << r.n << std::setw(14) << r.h_n << std::setw(14) << r.eta_n << std::setw(14)
        << r.sup_err << std::setw(14) << r.bound_k << std::setw(14) << r.bound_holder << std::setw(12)
        << std::setprecision(2) << r.cond_est << std::setprecision(4) << '\n';
  }
  out << std::defaultfloat << std::setprecision(6);
}

// ---------------------------------------------------------------- kernels

int cmd_kernels(bool as_json, std::ostream& out) {
  struct Row {
    KernelFamily family;
    const char* shape;
    const char* alpha;
  };
  const Row rows[] = {{KernelFamily::Gaussian, "eps (length scale)", "1"},
                      {KernelFamily::InverseMultiquadric, "eps (length scale)", "1"},
                      {KernelFamily::GeneralizedExponential, "exponent a in (0,1]", "a"},
                      {KernelFamily::Wendland31, "support radius rho", "1"}};
  if (as_json) {
    json list = json::array();
    for (const auto& r : rows) {
      json entry = {{"family", std::string(family_name(r.family))},
                    {"label", std::string(family_label(r.family))},
                    {"shape", r.shape}};
      if (std::string(r.alpha) == "a") {
        entry["declared_alpha"] = "shape";
      } else {
        entry["declared_alpha"] = 1.0;
      }
      list.push_back(std::move(entry));
    }
    out << list.dump(2) << '\n';
    return kOk;
  }
  out << std::left << std::setw(12) << "family" << std::setw(24) << "label" << std::setw(22) << "shape"
      << "declared alpha" << '\n';
  for (const auto& r : rows) {
    out << std::setw(12) << family_name(r.family) << std::setw(24) << family_label(r.family)
        << std::setw(22) << r.shape << r.alpha << '\n';
  }
  out << std::right;
  return kOk;
}

// ---------------------------------------------------------------- fit / evaluate

Kernel load_kernel_arg(const std::string& arg) {
  const bool inline_json = arg.find('{') != std::string::npos;
  return kernel_from_json(inline_json ? parse_json_text(arg, "--kernel") : load_json_file(arg));
}

int cmd_fit(const FitOptionsCli& options, std::ostream& out) {
  const Kernel kernel = load_kernel_arg(options.kernel);
  auto points_in = open_input(options.points);
  const PointSet points = read_points_csv(points_in);
  auto values_in = open_input(options.values);
  const Vector values = read_values_csv(values_in);
  if (points.rows() != values.size()) {
    throw ConfigError(std::to_string(points.rows()) + " points but " + std::to_string(values.size()) +
                      " values");
  }
  FitOptions fit_options;
  fit_options.jitter = parse_jitter(options.jitter);
  fit_options.refine = options.refine;
  const Interpolant s = fit(kernel, points, values, fit_options);
  try {
    write_file_atomic(options.out, interpolant_to_json(s).dump(2) + "\n");
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }
  out << "kernel        " << describe(kernel) << '\n';
  out << "centers       " << points.rows() << '\n';
  out << "rkhs_norm     " << format_double(rkhs_norm(s.combination())) << '\n';
  out << "max_residual  " << format_double(s.max_residual()) << '\n';
  out << "jitter        " << format_double(s.jitter()) << '\n';
  out << "wrote         " << options.out << '\n';
  return kOk;
}

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out) {
  const LoadedInterpolant loaded = interpolant_from_json(load_json_file(options.interpolant));
  auto points_in = open_input(options.points);
  const PointSet points = read_points_csv(points_in);
  const Vector values = loaded.combination.evaluate(points);
  out << "value\n";
  for (double v : values) out << format_double(v) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- converge

int cmd_converge(RunOptions options, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = load_experiment(options);
  const fs::path dir = resolve_out_dir(options.out_dir);
  ensure_dir(dir);

  const ConvergenceRun run = run_convergence(config, Execution{options.threads});
  try {
    write_file_atomic(dir / "records.csv", records_csv(run));
    write_file_atomic(dir / "manifest.json", manifest_json(options, config, dir, "converge").dump(2) + "\n");
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }

  out << (config.name.empty() ? "experiment" : config.name) << ": " << describe(config.kernel)
      << ", generator " << generator_name(config.generator) << ", d=" << config.domain.dim()
      << ", |f|_K=" << format_double(run.target_norm) << '\n';
  out << "holder alpha=" << format_double(run.holder_alpha)
      << " C=" << format_double(run.holder_constant) << '\n';
  print_records(out, run);

  const double guide = 0.5 * run.holder_alpha;
  json rate;
  try {
    const RateFit fit = fit_rate(run.records, RateQuantity::SupError);
    rate = rate_to_json(fit, RateQuantity::SupError);
    out << "sup_err rate: slope " << format_double(fit.slope) << " (r^2 " << format_double(fit.r_squared)
        << ", guide alpha/2 = " << format_double(guide) << ")\n";
    if (fit.excluded > 0) out << "  " << fit.excluded << " record(s) at the numerical floor excluded\n";
  } catch (const InsufficientData& e) {
    rate = {{"slope", nullptr}, {"intercept", nullptr}, {"r_squared", nullptr},
            {"quantity", "sup_err"}, {"error", e.what()}};
    err << "warning: " << e.what() << '\n';
  }
  try {
    rate["eta_n"] = rate_to_json(fit_rate(run.records, RateQuantity::Eta), RateQuantity::Eta);
  } catch (const InsufficientData&) {
    rate["eta_n"] = nullptr;
  }
  rate["reference_slope"] = guide;

  LogLogPlot plot;
  plot.title = (config.name.empty() ? std::string("convergence") : config.name) + " - " +
               describe(config.kernel);
  plot.records = run.records;
  plot.reference_slope = guide;
  try {
    write_file_atomic(dir / "rate.json", rate.dump(2) + "\n");
    write_file_atomic(dir / "plot.svg", render_loglog_svg(plot));
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }
  out << "wrote " << (dir / "records.csv").string() << ", rate.json, plot.svg, manifest.json\n";

  if (!run.complete()) {
    err << "error: solver failed at n=" << *run.failed_n << ": " << run.failure
        << "\n(records.csv holds the partial run; retry with --jitter auto)\n";
    return kSolverFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------- rate

int cmd_rate(const RateOptions& options, std::ostream& out, std::ostream& err) {
  const auto quantity = parse_quantity(options.quantity);
  if (!quantity) {
    err << "error: --quantity must be sup_err or eta_n\n";
    return kUsage;
  }
  auto in = open_input(options.records);
  const auto records = read_records_csv(in);
  const RateFit fit = fit_rate(records, *quantity);
  if (std::abs(fit.slope) < 0.05) {
    err << "warning: " << quantity_name(*quantity)
        << " is essentially flat in h_n (slope " << format_double(fit.slope) << "); no convergence\n";
  }
  if (fit.excluded > 0) {
    err << "note: " << fit.excluded << " record(s) at or below " << format_double(kRateFloor)
        << " excluded\n";
  }
  out << rate_to_json(fit, *quantity).dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- counterexample

int cmd_counterexample(RunOptions options, std::ostream& out) {
  const ExperimentConfig config = load_experiment(options);
  const fs::path dir = resolve_out_dir(options.out_dir);
  ensure_dir(dir);

  const CounterexampleReport report = counterexample_report(config, Execution{options.threads});

  std::ostringstream table;
  table << "n,h_n_avoid,eta_n_avoid,h_n_control,eta_n_control\n";
  const std::size_t rows = std::min(report.avoiding.records.size(), report.control.records.size());
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& a = report.avoiding.records[i];
    const auto& c = report.control.records[i];
    table << a.n << ',' << format_double(a.h_n) << ',' << format_double(a.eta_n) << ','
          << format_double(c.h_n) << ',' << format_double(c.eta_n) << '\n';
  }

  const bool eta_constant = report.max_eta_deviation <= 1e-12;
  const bool fill_bounded = report.min_avoiding_fill >= config.avoid_ball->radius;
  const bool control_decays = report.control_decay >= 10.0;
  const bool holds = report.samples_vanish && report.interpolants_vanish && eta_constant &&
                     fill_bounded && report.avoiding.complete() && report.control.complete();

  json summary = {{"expected_eta", report.expected_eta},
                  {"samples_vanish", report.samples_vanish},
                  {"interpolants_vanish", report.interpolants_vanish},
                  {"max_eta_deviation", report.max_eta_deviation},
                  {"min_avoiding_fill", report.min_avoiding_fill},
                  {"ball_radius", config.avoid_ball->radius},
                  {"control_decay", std::isfinite(report.control_decay) ? json(report.control_decay)
                                                                        : json("inf")},
                  {"control_decays_10x", control_decays},
                  {"non_convergence_verified", holds}};
  try {
    write_file_atomic(dir / "avoiding.csv", records_csv(report.avoiding));
    write_file_atomic(dir / "control.csv", records_csv(report.control));
    write_file_atomic(dir / "counterexample.csv", table.str());
    write_file_atomic(dir / "report.json", summary.dump(2) + "\n");
    write_file_atomic(dir / "manifest.json",
                      manifest_json(options, config, dir, "counterexample").dump(2) + "\n");
  } catch (const Error& e) {
    throw IoFailure(e.what());
  }

  out << "target |f|_K = " << format_double(report.expected_eta) << ", ball radius "
      << format_double(config.avoid_ball->radius) << '\n';
  out << std::setw(6) << "n" << std::setw(14) << "h_n avoid" << std::setw(14) << "eta avoid"
      << std::setw(14) << "h_n control" << std::setw(14) << "eta control" << '\n';
  out << std::scientific << std::setprecision(4);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& a = report.avoiding.records[i];
    const auto& c = report.control.records[i];
    out << std::setw(6) << a.n << std::setw(14) << a.h_n << std::setw(14) << a.eta_n << std::setw(14)
        << c.h_n << std::setw(14) << c.eta_n << '\n';
  }
  out << std::defaultfloat << std::setprecision(6);
  out << "samples vanish: " << (report.samples_vanish ? "yes" : "no")
      << ", interpolants vanish: " << (report.interpolants_vanish ? "yes" : "no")
      << ", max |eta_n - |f|_K| = " << format_double(report.max_eta_deviation) << '\n';
  out << "control decay factor " << format_double(report.control_decay) << '\n';
  out << (holds ? "non-convergence verified" : "non-convergence NOT verified") << '\n';
  return holds ? kOk : kCheckFailed;
}

void add_run_options(CLI::App* sub, RunOptions& options) {
  sub->add_option("config", options.config_path, "experiment config JSON");
  sub->add_option("--manifest", options.manifest_path, "re-run from a manifest.json");
  sub->add_option("-o,--out", options.out_dir,
                  std::string("output directory (default: $") + kOutputDirEnv + " or ./kreg-out)");
  sub->add_option("--seed", options.seed, "override the master seed");
  sub->add_option("--jitter", options.jitter, "none | auto | lambda");
  sub->add_option("--grid", options.grid, "evaluation grid points per axis")->check(CLI::Range(2, 100000));
  sub->add_option("--threads", options.threads, "worker threads")->check(CLI::Range(1, 256));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel interpolation in RKHS and convergence experiments", "kreg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  bool kernels_json = false;
  auto* kernels = app.add_subcommand("kernels", "list kernel families");
  kernels->add_flag("--json", kernels_json, "machine-readable output");

  FitOptionsCli fit_options;
  auto* fit_cmd = app.add_subcommand("fit", "fit an interpolant to sampled values");
  fit_cmd->add_option("-k,--kernel", fit_options.kernel, "kernel spec: inline JSON or file")->required();
  fit_cmd->add_option("-p,--points", fit_options.points, "points CSV (x1,...,xd)")->required();
  fit_cmd->add_option("-v,--values", fit_options.values, "values CSV")->required();
  fit_cmd->add_option("-o,--out", fit_options.out, "interpolant JSON to write")->required();
  fit_cmd->add_option("--jitter", fit_options.jitter, "none | auto | lambda");
  fit_cmd->add_flag("--refine", fit_options.refine, "one step of iterative refinement");

  EvaluateOptions eval_options;
  auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a saved interpolant");
  eval_cmd->add_option("-i,--interpolant", eval_options.interpolant, "interpolant JSON")->required();
  eval_cmd->add_option("-p,--points", eval_options.points, "points CSV")->required();

  RunOptions converge_options;
  auto* converge = app.add_subcommand("converge", "run a convergence experiment");
  add_run_options(converge, converge_options);

  RateOptions rate_options;
  auto* rate = app.add_subcommand("rate", "fit a log-log rate to a records CSV");
  rate->add_option("records", rate_options.records, "records CSV")->required();
  rate->add_option("-q,--quantity", rate_options.quantity, "sup_err | eta_n");

  RunOptions counter_options;
  auto* counter = app.add_subcommand("counterexample", "non-convergence without dense sampling");
  add_run_options(counter, counter_options);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*kernels) return cmd_kernels(kernels_json, out);
    if (*fit_cmd) return cmd_fit(fit_options, out);
    if (*eval_cmd) return cmd_evaluate(eval_options, out);
    if (*converge) {
      if (converge_options.config_path.empty() && converge_options.manifest_path.empty()) {
        err << "converge: give a config path or --manifest\n";
        return kUsage;
      }
      return cmd_converge(converge_options, out, err);
    }
    if (*rate) return cmd_rate(rate_options, out, err);
    if (*counter) {
      if (counter_options.config_path.empty() && counter_options.manifest_path.empty()) {
        err << "counterexample: give a config path or --manifest\n";
        return kUsage;
      }
      return cmd_counterexample(counter_options, out);
    }
  } catch (const NotPositiveDefinite& e) {
    err << "error: " << e.what() << "\n(retry with --jitter auto or --jitter <lambda>)\n";
    return kSolverFailure;
  } catch (const InterpolationToleranceExceeded& e) {
    err << "error: " << e.what() << "\n(the system is too ill-conditioned; try --refine or --jitter)\n";
    return kSolverFailure;
  } catch (const DuplicatePoints& e) {
    err << "error: DuplicatePoints: " << e.what() << '\n';
    return kDuplicatePoints;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    // ConfigError, DimensionMismatch, DomainError, KernelMismatch: bad input.
    err << "error: " << e.what() << '\n';
    return kSchemaViolation;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace kreg::cli
