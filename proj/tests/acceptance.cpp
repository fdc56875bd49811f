// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance and time budget is pinned below.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qline/cli/commands.hpp"
#include "qline/cli/spec_file.hpp"
#include "qline/oracle.hpp"
#include "qline/response.hpp"
#include "qline/sweep.hpp"
#include "qline/verify.hpp"

using namespace qline;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kKernelRelTol = 1e-6;
constexpr double kTransformAbsTol = 1e-8;
constexpr double kNormAbsTol = 1e-9;
constexpr double kEndToEndRelTol = 1e-6;
constexpr double kDominanceRatio = 1e-2;
constexpr double kSizeVariation = 1e-5;
constexpr double kScaleSensitivityLow = 0.4;
constexpr double kScaleSensitivityHigh = 0.9;
constexpr double kPersistenceFraction = 0.5;
constexpr double kModerateLow = 0.1;
constexpr double kModerateHigh = 0.5;

// Time budgets in seconds.
constexpr double kBudgetKernel = 60;
constexpr double kBudgetTransform = 30;
constexpr double kBudgetEndToEnd = 600;
constexpr double kBudgetDominance = 120;
constexpr double kBudgetGrid = 1800;

constexpr double s0 = ScaleDefaults::sigma0;
constexpr double e0 = ScaleDefaults::epsilon0;

constexpr CutoffModel kCutoffs[] = {CutoffModel::Gaussian, CutoffModel::Lorentzian,
                                    CutoffModel::Exponential, CutoffModel::Sharp};
constexpr Shape kShapes[] = {Shape::Gaussian, Shape::Lorentzian, Shape::Quartic, Shape::Sharp};

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("C%d %-38s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double p_over_lambda_sq(const Parameters& p) {
  return response::transition_probability(validate(p)).p_over_lambda_sq;
}

Parameters base(Process process, Shape shape = Shape::Gaussian,
                CutoffModel cutoff = CutoffModel::Exponential) {
  Parameters p = default_parameters();
  p.qubit.process = process;
  p.smearing.shape = shape;
  p.cutoff.model = cutoff;
  return p;
}

/// Delta for every cutoff pair at one parameter point (Gaussian shape).
std::map<std::string, double> cutoff_pair_deltas(Parameters p) {
  double values[4];
  for (int i = 0; i < 4; ++i) {
    p.cutoff.model = kCutoffs[i];
    values[i] = p_over_lambda_sq(p);
  }
  std::map<std::string, double> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      out[std::string{tag(kCutoffs[i]), tag(kCutoffs[j])}] =
          sweep::relative_difference(values[i], values[j]);
    }
  }
  return out;
}

// ------------------------------------------------------------------------

void c1_kernel() {
  Stopwatch t;
  const auto c = verify::check_kernels();
  const double s = t.seconds();
  report(1, "kernel oracle equivalence", c.max_rel_dev < kKernelRelTol && s < kBudgetKernel,
         fmt("max rel dev %.2e (tol %.0e) over %zu samples, worst r=%.4g T=%.4g w=%.4g; %.1f s",
             c.max_rel_dev, kKernelRelTol, c.samples, c.ramp, c.plateau, c.omega, s));
}

void c2_transforms() {
  Stopwatch t;
  const auto tr = verify::check_transforms();
  const auto norm = verify::check_normalization();
  const double s = t.seconds();
  report(2, "transform equivalence",
         tr.max_abs_dev < kTransformAbsTol && norm.max_abs_dev < kNormAbsTol && s < kBudgetTransform,
         fmt("max |dF~| %.2e (tol %.0e, worst %s sigma=%g k=%g); max |norm-1| %.2e (tol %.0e); %.1f s",
             tr.max_abs_dev, kTransformAbsTol, std::string(to_string(tr.shape)).c_str(), tr.sigma,
             tr.k, norm.max_abs_dev, kNormAbsTol, s));
}

void c3_end_to_end() {
  Stopwatch t;
  std::mt19937_64 rng(7);
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
  };
  oracle::OracleSettings os;
  os.precision = oracle::Precision::Double;
  double worst = 0.0;
  std::string worst_desc;
  for (int i = 0; i < 20; ++i) {
    Parameters p;
    // The first 16 bundles enumerate every shape x cutoff pairing.
    p.smearing.shape = kShapes[i % 4];
    p.cutoff.model = kCutoffs[(i / 4) % 4];
    if (i >= 16) {
      p.smearing.shape = kShapes[rng() % 4];
      p.cutoff.model = kCutoffs[rng() % 4];
    }
    p.qubit.process = i % 2 == 0 ? Process::Excitation : Process::Emission;
    p.qubit.omega = log_uniform(0.5, 2.0);
    p.qubit.lambda = log_uniform(0.1, 2.0);
    p.smearing.sigma = log_uniform(1e-4, 0.5);
    p.cutoff.epsilon = log_uniform(0.5, 50.0);
    p.switching.ramp = log_uniform(0.1, 10.0);
    p.switching.plateau = log_uniform(0.1, 10.0);
    const Bundle b = validate(p);
    const double a = response::transition_probability(b).p_over_lambda_sq;
    const double n = oracle::probability_numeric(b, {}, os).p_over_lambda_sq;
    const double dev = std::abs(a - n) / n;
    if (dev >= worst) {
      worst = dev;
      worst_desc = fmt("%s %s/%s r=%.3g T=%.3g eps=%.3g", std::string(to_string(p.qubit.process)).c_str(),
                       std::string(to_string(p.smearing.shape)).c_str(),
                       std::string(to_string(p.cutoff.model)).c_str(), p.switching.ramp,
                       p.switching.plateau, p.cutoff.epsilon);
    }
  }
  const double s = t.seconds();
  report(3, "end-to-end oracle equivalence", worst < kEndToEndRelTol && s < kBudgetEndToEnd,
         fmt("max rel dev %.2e (tol %.0e) over 20 bundles, worst %s; %.1f s", worst,
             kEndToEndRelTol, worst_desc.c_str(), s));
}

void c4_lambda_scaling() {
  bool ok = true;
  for (Shape shape : kShapes) {
    for (CutoffModel cutoff : kCutoffs) {
      for (Process process : {Process::Excitation, Process::Emission}) {
        auto p = base(process, shape, cutoff);
        for (double lambda : {0.3, 1.0, 1.7}) {
          p.qubit.lambda = lambda;
          const auto one = response::transition_probability(validate(p));
          p.qubit.lambda = 2 * lambda;
          const auto two = response::transition_probability(validate(p));
          ok = ok && two.p / 4 == one.p && two.p_over_lambda_sq == one.p_over_lambda_sq;
        }
      }
    }
  }
  sweep::SweepSpec spec;
  spec.fixed = base(Process::Emission);
  spec.axes = {{sweep::Axis::Epsilon, 0.5, 100.0, 4, sweep::Spacing::Logarithmic}};
  const auto d1 = sweep::run_sweep(spec, {});
  spec.fixed.qubit.lambda = 3.7;
  const auto d2 = sweep::run_sweep(spec, {});
  bool rows_ok = d1.rows.size() == d2.rows.size();
  for (std::size_t i = 0; rows_ok && i < d1.rows.size(); ++i) {
    rows_ok = d1.rows[i].delta == d2.rows[i].delta && d1.rows[i].p_a == d2.rows[i].p_a;
  }
  report(4, "lambda scaling exactness", ok && rows_ok,
         fmt("p(2l)/4 == p(l) bitwise on 96 bundles: %s; %zu sweep rows invariant: %s",
             ok ? "yes" : "no", d1.rows.size(), rows_ok ? "yes" : "no"));
}

void c5_dominance() {
  Stopwatch t;
  double shapes[4];
  for (int i = 0; i < 4; ++i) shapes[i] = p_over_lambda_sq(base(Process::Emission, kShapes[i]));
  double max_shape = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      max_shape = std::max(max_shape, sweep::relative_difference(shapes[i], shapes[j]));
    }
  }
  double max_cutoff = 0.0;
  for (const auto& [pair, d] : cutoff_pair_deltas(base(Process::Emission))) {
    max_cutoff = std::max(max_cutoff, d);
  }
  const double s = t.seconds();
  report(5, "cutoff-model dominance",
         max_shape <= kDominanceRatio * max_cutoff && s < kBudgetDominance,
         fmt("max shape-pair delta %.2e <= %.0e x max cutoff-pair delta %.3f; %.1f s", max_shape,
             kDominanceRatio, max_cutoff, s));
}

void c6_size_and_scale() {
  const auto data = sweep::figure_dataset(sweep::FigureId::Fig2d, {});
  std::map<std::string, std::pair<double, double>> range;
  for (const auto& row : data.rows) {
    auto [it, fresh] = range.try_emplace(row.pair, row.delta, row.delta);
    it->second.first = std::min(it->second.first, row.delta);
    it->second.second = std::max(it->second.second, row.delta);
  }
  double variation = 0.0;
  for (const auto& [pair, r] : range) variation = std::max(variation, r.second - r.first);

  auto p = base(Process::Emission);
  p.cutoff.epsilon = 0.1 * e0;
  const double low = p_over_lambda_sq(p);
  p.cutoff.epsilon = 10 * e0;
  const double high = p_over_lambda_sq(p);
  const double sensitivity = sweep::relative_difference(low, high);
  std::string others;
  for (CutoffModel m : kCutoffs) {
    auto q = base(Process::Emission, Shape::Gaussian, m);
    q.cutoff.epsilon = 0.1 * e0;
    const double a = p_over_lambda_sq(q);
    q.cutoff.epsilon = 10 * e0;
    others += fmt(" %c=%.3f", tag(m), sweep::relative_difference(a, p_over_lambda_sq(q)));
  }
  report(6, "size insensitivity, scale sensitivity",
         variation < kSizeVariation && sensitivity >= kScaleSensitivityLow &&
             sensitivity <= kScaleSensitivityHigh,
         fmt("cutoff-pair delta variation over sigma in [%g, %g]: %.2e (tol %.0e); "
             "emission delta(eps=%g vs %g) = %.3f in [%.1f, %.1f] (per model:%s)",
             0.1 * s0, 10 * s0, variation, kSizeVariation, 0.1 * e0, 10 * e0, sensitivity,
             kScaleSensitivityLow, kScaleSensitivityHigh, others.c_str()));
}

void c7_convergence() {
  auto p = base(Process::Emission);
  p.cutoff.epsilon = e0;
  const auto at_base = cutoff_pair_deltas(p);
  p.cutoff.epsilon = 100 * e0;
  const auto at_far = cutoff_pair_deltas(p);
  p.cutoff.epsilon = 20 * e0;
  const auto at_mid = cutoff_pair_deltas(p);

  bool decreasing = true;
  std::string detail;
  for (const auto& [pair, d] : at_base) {
    decreasing = decreasing && at_far.at(pair) < d;
    detail += fmt(" %s %.3g->%.3g", pair.c_str(), d, at_far.at(pair));
  }
  double min_e = 1.0, max_other = 0.0;
  for (const auto& [pair, d] : at_mid) {
    if (pair.find('E') != std::string::npos) min_e = std::min(min_e, d);
    else max_other = std::max(max_other, d);
  }
  report(7, "convergence with cutoff scale", decreasing && min_e > max_other,
         fmt("delta(eps0)->delta(100 eps0):%s; at 20 eps0 min E-pair %.3g > max other %.3g",
             detail.c_str(), min_e, max_other));
}

void c8_switching() {
  // Full (r, T) grids for both processes.
  Stopwatch t;
  const auto fig4 = sweep::figure_dataset(sweep::FigureId::Fig4, {});
  const auto fig5 = sweep::figure_dataset(sweep::FigureId::Fig5, {});
  const double grid_seconds = t.seconds();
  std::size_t bad_rows = 0;
  for (const auto* d : {&fig4, &fig5}) {
    for (const auto& row : d->rows) bad_rows += row.ok && std::isfinite(row.delta) ? 0 : 1;
  }
  const bool grid_ok = fig4.rows.size() == 2400 && fig5.rows.size() == 2400 && bad_rows == 0 &&
                       grid_seconds < kBudgetGrid;

  const auto at = [](Process process, double r, double T) {
    auto p = base(process);
    p.switching = {r, T};
    return cutoff_pair_deltas(p);
  };

  // Persistence of the model dependence for long interactions.
  const double es_long = at(Process::Excitation, 0.1, 100.0).at("ES");
  const double es_short = at(Process::Excitation, 0.1, 1.0).at("ES");
  const bool persistence = es_long > kPersistenceFraction * es_short;

  // Adiabatic switching reduces every excitation pair's delta.
  const auto slow = at(Process::Excitation, 10.0, 1.0);
  const auto fast = at(Process::Excitation, 0.1, 1.0);
  bool adiabatic = true;
  std::string adiabatic_detail;
  for (const auto& [pair, d] : slow) {
    if (!(d < fast.at(pair))) {
      adiabatic = false;
      adiabatic_detail += fmt(" %s %.3g!<%.3g", pair.c_str(), d, fast.at(pair));
    }
  }

  // Long interactions reduce every emission pair's delta.
  const auto em_long = at(Process::Emission, 0.1, 100.0);
  const auto em_short = at(Process::Emission, 0.1, 1.0);
  bool emission = true;
  for (const auto& [pair, d] : em_long) emission = emission && d < em_short.at(pair);

  // Moderate model dependence near r = 1 at large T.
  double best = 0.0;
  std::string best_pair;
  bool moderate = false;
  for (const auto& [pair, d] : at(Process::Excitation, 1.0, 100.0)) {
    if (d >= kModerateLow && d <= kModerateHigh && d > best) {
      moderate = true;
      best = d;
      best_pair = pair;
    }
  }

  report(8, "switching-time phenomenology",
         grid_ok && persistence && adiabatic && emission && moderate,
         fmt("grids %zu+%zu rows, %zu bad, %.1f s; persistence dES %.3g > %.1f x %.3g: %s; "
             "adiabatic r=10 vs 0.1: %s%s; emission T=100 vs 1: %s; r=1 T=100 %s=%.3f in "
             "[%.1f, %.1f]: %s",
             fig4.rows.size(), fig5.rows.size(), bad_rows, grid_seconds, es_long,
             kPersistenceFraction, es_short, persistence ? "yes" : "no", adiabatic ? "yes" : "no",
             adiabatic_detail.c_str(), emission ? "yes" : "no", best_pair.c_str(), best,
             kModerateLow, kModerateHigh, moderate ? "yes" : "no"));
}

void c9_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("qline-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "qline");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };

  sweep::FigureOptions options;
  options.points_2d = 6;
  cli::SweepFile file{sweep::figure_spec(sweep::FigureId::Fig5, options), ""};
  const auto spec_path = (dir / "grid.spec").string();
  {
    std::ofstream f(spec_path);
    cli::write_spec(f, file);
  }
  const auto out = (dir / "grid.csv").string();
  const auto cache = (dir / "cache").string();
  std::vector<std::string> runs;
  bool codes_ok = true;
  for (const auto& extra : std::vector<std::vector<std::string>>{
           {"--no-cache", "--threads", "1"},
           {"--no-cache", "--threads", "1"},
           {"--no-cache", "--threads", "4"},
           {"--cache-dir", cache, "--threads", "4"},
           {"--cache-dir", cache, "--threads", "2"}}) {
    std::vector<std::string> args{"sweep", "--spec", spec_path, "--out", out};
    args.insert(args.end(), extra.begin(), extra.end());
    codes_ok = codes_ok && run(args) == cli::kOk;
    runs.push_back(slurp(out));
  }
  fs::remove_all(dir);
  const bool identical =
      std::all_of(runs.begin(), runs.end(), [&](const std::string& r) { return r == runs.front(); });
  report(9, "determinism", codes_ok && identical && !runs.front().empty(),
         fmt("5 sweep runs (serial, 4 threads, cold and warm cache), %zu bytes each: %s",
             runs.front().size(), identical ? "byte-identical" : "DIFFER"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{c1_kernel,        c2_transforms, c3_end_to_end,
                                                    c4_lambda_scaling, c5_dominance, c6_size_and_scale,
                                                    c7_convergence,   c8_switching,  c9_determinism};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("criterion aborted: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
