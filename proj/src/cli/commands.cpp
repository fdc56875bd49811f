#include "qline/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qline/cli/cache.hpp"
#include "qline/cli/manifest.hpp"
#include "qline/cli/spec_file.hpp"
#include "qline/dataset.hpp"
#include "qline/response.hpp"
#include "qline/sweep.hpp"
#include "qline/units.hpp"
#include "qline/verify.hpp"

namespace qline::cli {

namespace {

namespace fs = std::filesystem;
using dataset::format_number;

constexpr double kKernelTolerance = 1e-6;
constexpr double kTransformTolerance = 1e-8;
constexpr double kNormTolerance = 1e-9;

struct SettingsArgs {
  response::QuadratureSettings settings;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rel-tol", settings.rel_tol, "Relative tolerance of the k integral")
        ->capture_default_str();
    cmd->add_option("--abs-tol", settings.abs_tol, "Absolute tolerance of the k integral")
        ->capture_default_str();
    cmd->add_option("--max-panels", settings.max_panels, "Panel budget")->capture_default_str();
    cmd->add_option("--tail-safety", settings.tail_safety,
                    "Tail bound must be below rel-tol * P / tail-safety")
        ->capture_default_str();
  }
};

struct CacheArgs {
  std::string dir;
  bool disabled = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--cache-dir", dir, "Result cache directory (default: $QLINE_CACHE_DIR)");
    cmd->add_flag("--no-cache", disabled, "Ignore any configured cache");
  }

  std::unique_ptr<ProbabilityCache> open(std::ostream& err) const {
    if (disabled) return nullptr;
    const auto path = resolve_cache_dir(dir);
    if (!path) return nullptr;
    return std::make_unique<ProbabilityCache>(*path, &err);
  }
};

sweep::Evaluator cached_evaluator(ProbabilityCache* cache) {
  if (cache == nullptr) return {};
  return [cache](const Bundle& bundle, const response::QuadratureSettings& settings) {
    if (auto hit = cache->lookup(bundle, settings)) return *hit;
    auto result = response::transition_probability(bundle, settings);
    cache->store(bundle, settings, result);
    return result;
  };
}

void report_cache(const ProbabilityCache* cache, std::ostream& err) {
  if (cache == nullptr) return;
  err << "cache: " << cache->hits() << " hits, " << cache->misses() << " misses ("
      << cache->directory().string() << ")\n";
}

std::string describe(const Parameters& p) {
  std::ostringstream os;
  os << "process=" << to_string(p.qubit.process) << " omega=" << p.qubit.omega
     << " shape=" << to_string(p.smearing.shape) << " sigma=" << p.smearing.sigma
     << " cutoff=" << to_string(p.cutoff.model) << " eps=" << p.cutoff.epsilon
     << " r=" << p.switching.ramp << " T=" << p.switching.plateau;
  return os.str();
}

// ---------------------------------------------------------------- probability

struct ProbabilityArgs {
  std::string process = "excitation";
  std::string shape = "gaussian";
  std::string cutoff = "exponential";
  double omega = ScaleDefaults::omega0;
  double lambda = 1.0;
  double sigma = ScaleDefaults::sigma0;
  double eps = ScaleDefaults::epsilon0;
  double ramp = ScaleDefaults::r0;
  double plateau = ScaleDefaults::t0;
  std::string units = "natural";
  std::string convention = "angular";
  bool csv = false;
  SettingsArgs settings;
  CacheArgs cache;
};

void attach(CLI::App* cmd, ProbabilityArgs& a) {
  cmd->add_option("--process", a.process, "excitation | emission")->capture_default_str();
  cmd->add_option("--omega", a.omega, "Qubit gap")->capture_default_str();
  cmd->add_option("--lambda", a.lambda, "Coupling strength")->capture_default_str();
  cmd->add_option("--shape", a.shape, "Smearing: gaussian | lorentzian | quartic | sharp")
      ->capture_default_str();
  cmd->add_option("--sigma", a.sigma, "Smearing size")->capture_default_str();
  cmd->add_option("--cutoff", a.cutoff, "UV cutoff: gaussian | lorentzian | exponential | sharp")
      ->capture_default_str();
  cmd->add_option("--eps", a.eps, "Cutoff scale")->capture_default_str();
  cmd->add_option("--r", a.ramp, "Switching ramp duration")->capture_default_str();
  cmd->add_option("--T", a.plateau, "Switching plateau duration")->capture_default_str();
  cmd->add_option("--units", a.units,
                  "natural (Omega0 = 1) or ghz (omega, eps in GHz; sigma in um; r, T in ns)")
      ->check(CLI::IsMember({"natural", "ghz"}))
      ->capture_default_str();
  cmd->add_option("--freq-convention", a.convention,
                  "Whether 10 GHz means 1e10 rad/s (angular) or 1e10 Hz (ordinary)")
      ->check(CLI::IsMember({"angular", "ordinary"}))
      ->capture_default_str();
  cmd->add_flag("--csv", a.csv, "Print a CSV header and row instead of key: value lines");
  a.settings.attach(cmd);
  a.cache.attach(cmd);
}

Parameters resolve(const ProbabilityArgs& a) {
  Parameters p;
  p.qubit.process = parse_process(a.process);
  p.smearing.shape = parse_shape(a.shape);
  p.cutoff.model = parse_cutoff(a.cutoff);
  p.qubit.lambda = a.lambda;
  if (a.units == "ghz") {
    const auto conv = a.convention == "ordinary" ? units::FrequencyConvention::Ordinary
                                                 : units::FrequencyConvention::Angular;
    p.qubit.omega = units::frequency_from_ghz(a.omega);
    p.cutoff.epsilon = units::frequency_from_ghz(a.eps);
    p.smearing.sigma = units::length_from_um(a.sigma, conv);
    p.switching.ramp = units::time_from_ns(a.ramp, conv);
    p.switching.plateau = units::time_from_ns(a.plateau, conv);
  } else {
    p.qubit.omega = a.omega;
    p.cutoff.epsilon = a.eps;
    p.smearing.sigma = a.sigma;
    p.switching.ramp = a.ramp;
    p.switching.plateau = a.plateau;
  }
  return p;
}

int cmd_probability(const ProbabilityArgs& a, std::ostream& out, std::ostream& err) {
  const Bundle bundle = validate(resolve(a));
  response::validate(a.settings.settings);
  const auto cache = a.cache.open(err);
  ProbabilityResult r;
  if (cache) {
    r = cached_evaluator(cache.get())(bundle, a.settings.settings);
  } else {
    r = response::transition_probability(bundle, a.settings.settings);
  }
  const auto& p = bundle.parameters();
  if (a.csv) {
    out << "process,omega,lambda,shape,sigma,cutoff,eps,r,T,p,p_over_lambda_sq,abs_error_estimate\n"
        << to_string(p.qubit.process) << ',' << format_number(p.qubit.omega) << ','
        << format_number(p.qubit.lambda) << ',' << to_string(p.smearing.shape) << ','
        << format_number(p.smearing.sigma) << ',' << to_string(p.cutoff.model) << ','
        << format_number(p.cutoff.epsilon) << ',' << format_number(p.switching.ramp) << ','
        << format_number(p.switching.plateau) << ',' << format_number(r.p) << ','
        << format_number(r.p_over_lambda_sq) << ',' << format_number(r.abs_error_estimate)
        << '\n';
  } else {
    out << "p: " << format_number(r.p) << '\n'
        << "p_over_lambda_sq: " << format_number(r.p_over_lambda_sq) << '\n'
        << "abs_error_estimate: " << format_number(r.abs_error_estimate) << '\n'
        << "tail_bound: " << format_number(r.tail_bound) << '\n'
        << "k_max: " << format_number(r.k_max) << '\n'
        << "panels_used: " << r.panels_used << '\n';
  }
  report_cache(cache.get(), err);
  return kOk;
}

// ---------------------------------------------------------- sweep and figure

/// Runs the sweep and writes dataset plus manifest. An empty path writes the
/// dataset to `out` and skips the manifest.
int emit_dataset(const std::string& command, const sweep::SweepSpec& spec,
                 const response::QuadratureSettings& settings, const std::string& path,
                 const CacheArgs& cache_args, std::ostream& out, std::ostream& err) {
  response::validate(settings);
  sweep::validate(spec);
  const auto cache = cache_args.open(err);
  const auto data = sweep::run_sweep(spec, settings, cached_evaluator(cache.get()));

  const auto manifest = RunManifest::create(
      command, {{"sweep", to_json(spec)}, {"settings", to_json(settings)}});
  dataset::Metadata extra{{"version", manifest.version}, {"input_hash", manifest.input_hash}};

  if (path.empty()) {
    dataset::write(out, data, extra);
  } else {
    const std::string manifest_path = path + ".manifest.json";
    extra.emplace_back("manifest", fs::path(manifest_path).filename().string());
    const auto write_atomic = [](const std::string& target, const std::string& content) {
      const std::string tmp = target + ".tmp";
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        if (!f) throw std::runtime_error("cannot write '" + tmp + "'");
      }
      fs::rename(tmp, target);
    };
    write_atomic(path, dataset::to_string(data, extra));
    write_atomic(manifest_path, manifest.to_json().dump(2) + "\n");
    out << "wrote " << path << " (" << data.rows.size() << " rows) and " << manifest_path << '\n';
  }
  std::size_t failed = 0;
  for (const auto& row : data.rows) failed += row.ok ? 0 : 1;
  if (failed > 0) err << "warning: " << failed << " rows failed\n";
  report_cache(cache.get(), err);
  return kOk;
}

struct SweepArgs {
  std::string spec_path;
  std::string out_path;
  std::size_t threads = 0;
  SettingsArgs settings;
  CacheArgs cache;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  auto file = read_spec_file(a.spec_path);
  if (!a.out_path.empty()) file.output_path = a.out_path;
  if (a.threads > 0) file.spec.threads = a.threads;
  return emit_dataset("sweep", file.spec, a.settings.settings, file.output_path, a.cache, out, err);
}

struct FigureArgs {
  std::string id;
  sweep::FigureOptions options;
  std::string out_path;
  bool emit_spec = false;
  SettingsArgs settings;
  CacheArgs cache;
};

int cmd_figure(const FigureArgs& a, std::ostream& out, std::ostream& err) {
  const auto spec = sweep::figure_spec(sweep::parse_figure(a.id), a.options);
  if (a.emit_spec) {
    write_spec(out, SweepFile{spec, a.out_path});
    return kOk;
  }
  return emit_dataset("figure", spec, a.settings.settings, a.out_path, a.cache, out, err);
}

// --------------------------------------------------------------------- verify

struct VerifyArgs {
  std::size_t points = 20;
  std::uint64_t seed = verify::KernelCheckOptions{}.seed;
  double fault = 0.0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  verify::KernelCheckOptions kopt;
  kopt.profiles = a.points;
  kopt.seed = a.seed;
  kopt.kernel_scale = 1.0 + a.fault;
  const auto kernel = verify::check_kernels(kopt);

  verify::TransformCheckOptions topt;
  const auto transform = verify::check_transforms(topt);
  const auto norm = verify::check_normalization(topt);

  bool ok = true;
  const auto line = [&](const char* what, double value, const char* tol, double limit,
                        const std::string& detail) {
    const bool pass = value < limit;
    ok = ok && pass;
    out << what << " < " << tol << ": " << (pass ? "PASS" : "FAIL") << " (" << detail << ")\n";
  };
  line("kernel max rel dev", kernel.max_rel_dev, "1e-6", kKernelTolerance, verify::describe(kernel));
  line("transform max abs dev", transform.max_abs_dev, "1e-8", kTransformTolerance,
       verify::describe(transform));
  line("normalization max abs dev", norm.max_abs_dev, "1e-9", kNormTolerance,
       verify::describe(norm));
  if (!ok) {
    out << "worst kernel tuple: r=" << format_number(kernel.ramp)
        << " T=" << format_number(kernel.plateau) << " omega=" << format_number(kernel.omega)
        << '\n';
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transition probabilities of a superconducting qubit coupled to a transmission line",
               "qline"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  ProbabilityArgs prob;
  attach(app.add_subcommand("probability", "Evaluate one transition probability"), prob);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a model-comparison sweep from a spec file");
  sweep_cmd->add_option("--spec", sw.spec_path, "Sweep spec file")->required();
  sweep_cmd->add_option("--out", sw.out_path, "Dataset path (overrides [output] path)");
  sweep_cmd->add_option("--threads", sw.threads, "Worker threads (overrides [output] threads)");
  sw.settings.attach(sweep_cmd);
  sw.cache.attach(sweep_cmd);

  FigureArgs fig;
  auto* fig_cmd = app.add_subcommand("figure", "Regenerate the data behind a comparison figure");
  fig_cmd->add_option("--id", fig.id, "fig2a | fig2b | fig2c | fig2d | fig3 | fig4 | fig5")
      ->required();
  fig_cmd->add_option("--points", fig.options.points_1d, "Points on one-dimensional axes")
      ->capture_default_str();
  fig_cmd->add_option("--points-2d", fig.options.points_2d, "Points per axis on (r, T) grids")
      ->capture_default_str();
  fig_cmd->add_option("--r0", fig.options.r0, "Reference ramp duration")->capture_default_str();
  fig_cmd->add_option("--T0", fig.options.t0, "Reference plateau duration")->capture_default_str();
  fig_cmd->add_option("--threads", fig.options.threads, "Worker threads")->capture_default_str();
  fig_cmd->add_option("--out", fig.out_path, "Dataset path (default: stdout)");
  fig_cmd->add_flag("--emit-spec", fig.emit_spec, "Print the equivalent sweep spec and exit");
  fig.settings.attach(fig_cmd);
  fig.cache.attach(fig_cmd);

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check closed forms against numeric oracles");
  ver_cmd->add_option("--points", ver.points, "Random switching profiles (5 omegas each)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Sampling seed")->capture_default_str();
  ver_cmd->add_option("--inject-kernel-fault", ver.fault,
                      "Scale the closed-form kernel by 1 + value")
      ->group("");

  double alpha = 0.0;
  auto* conv_cmd = app.add_subcommand(
      "convert-coupling", "Coupling lambda equivalent to an Ohmic spin-boson alpha");
  conv_cmd->add_option("--alpha", alpha, "Spin-boson coupling")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*app.get_subcommand("probability")) return cmd_probability(prob, out, err);
    if (*sweep_cmd) return cmd_sweep(sw, out, err);
    if (*fig_cmd) return cmd_figure(fig, out, err);
    if (*ver_cmd) return cmd_verify(ver, out);
    if (*conv_cmd) {
      out << "lambda: " << format_number(response::coupling_from_spin_boson(alpha)) << '\n';
      return kOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const SpecFileError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const response::QuadratureError& e) {
    err << "error: quadrature failed: " << e.what()
        << " (partial estimate " << format_number(e.partial_estimate()) << ", error bound "
        << format_number(e.error_bound()) << ")\n";
    return kQuadrature;
  } catch (const sweep::SweepError& e) {
    err << "error: sweep point failed: " << e.what() << " at " << describe(e.parameters()) << '\n';
    return kQuadrature;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInvalid;
}

}  // namespace qline::cli
