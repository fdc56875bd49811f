#include "qline/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <thread>

namespace qline::sweep {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void set_axis(Parameters& p, Axis axis, double value) {
  switch (axis) {
    case Axis::Sigma: p.smearing.sigma = value; break;
    case Axis::Epsilon: p.cutoff.epsilon = value; break;
    case Axis::Ramp: p.switching.ramp = value; break;
    case Axis::Plateau: p.switching.plateau = value; break;
  }
}

std::size_t model_count(const SweepSpec& spec) {
  return spec.comparison == Comparison::Shapes ? spec.shapes.size() : spec.cutoffs.size();
}

void set_model(const SweepSpec& spec, Parameters& p, std::size_t model) {
  if (spec.comparison == Comparison::Shapes) {
    p.smearing.shape = spec.shapes[model];
  } else {
    p.cutoff.model = spec.cutoffs[model];
  }
}

char model_tag(const SweepSpec& spec, std::size_t model) {
  return spec.comparison == Comparison::Shapes ? tag(spec.shapes[model]) : tag(spec.cutoffs[model]);
}

struct Evaluation {
  ProbabilityResult result;
  bool ok = false;
  std::string error;
};

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::Sigma: return "sigma";
    case Axis::Epsilon: return "eps";
    case Axis::Ramp: return "r";
    case Axis::Plateau: return "T";
  }
  return "?";
}

std::string_view to_string(Spacing spacing) {
  return spacing == Spacing::Linear ? "linear" : "log";
}

std::string_view to_string(Comparison comparison) {
  return comparison == Comparison::Shapes ? "shapes" : "cutoffs";
}

Axis parse_axis(std::string_view name) {
  if (name == "sigma") return Axis::Sigma;
  if (name == "eps" || name == "epsilon") return Axis::Epsilon;
  if (name == "r" || name == "ramp") return Axis::Ramp;
  if (name == "T" || name == "plateau") return Axis::Plateau;
  throw ValidationError("unknown axis '" + std::string(name) + "'");
}

Spacing parse_spacing(std::string_view name) {
  const auto n = lowercase(name);
  if (n == "linear" || n == "lin") return Spacing::Linear;
  if (n == "log" || n == "logarithmic") return Spacing::Logarithmic;
  throw ValidationError("unknown spacing '" + std::string(name) + "'");
}

Comparison parse_comparison(std::string_view name) {
  const auto n = lowercase(name);
  if (n == "shapes" || n == "shape") return Comparison::Shapes;
  if (n == "cutoffs" || n == "cutoff") return Comparison::Cutoffs;
  throw ValidationError("unknown comparison '" + std::string(name) + "'");
}

std::vector<double> AxisGrid::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lower;
    return out;
  }
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    if (spacing == Spacing::Linear) {
      out[i] = lower + (upper - lower) * f;
    } else {
      out[i] = lower * std::pow(upper / lower, f);
    }
  }
  out.back() = upper;
  return out;
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty()) throw ValidationError("sweep needs at least one axis");
  std::set<Axis> seen;
  for (const auto& grid : spec.axes) {
    const auto name = std::string(to_string(grid.axis));
    if (!seen.insert(grid.axis).second) throw ValidationError("axis '" + name + "' repeated");
    if (grid.points == 0) throw ValidationError("axis '" + name + "' has no points");
    if (!std::isfinite(grid.lower) || !std::isfinite(grid.upper)) {
      throw ValidationError("axis '" + name + "' bounds must be finite");
    }
    if (grid.points > 1 && !(grid.lower != grid.upper)) {
      throw ValidationError("axis '" + name + "' grid must be strictly monotone");
    }
    if (grid.spacing == Spacing::Logarithmic && !(grid.lower > 0.0 && grid.upper > 0.0)) {
      throw ValidationError("axis '" + name + "' log grid needs positive bounds");
    }
    // Each grid point must itself be a valid parameter value.
    Parameters probe = spec.fixed;
    for (double v : grid.values()) {
      set_axis(probe, grid.axis, v);
      qline::validate(probe);
    }
  }
  if (model_count(spec) < 2) throw ValidationError("sweep needs at least two models to compare");
  qline::validate(spec.fixed);
}

RelativeDifference relative_difference_checked(double p_a, double p_b) {
  if (!(p_a >= 0.0) || !(p_b >= 0.0)) throw ValidationError("probabilities must be non-negative");
  const double top = std::max(p_a, p_b);
  if (top == 0.0) return {0.0, true};
  return {std::abs(p_a - p_b) / top, false};
}

double relative_difference(double p_a, double p_b) {
  return relative_difference_checked(p_a, p_b).delta;
}

std::vector<std::string> pair_ids(const SweepSpec& spec) {
  std::vector<std::string> ids;
  const auto n = model_count(spec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) ids.push_back({model_tag(spec, i), model_tag(spec, j)});
  }
  return ids;
}

Dataset run_sweep(const SweepSpec& spec, const response::QuadratureSettings& settings,
                  const Evaluator& evaluator) {
  validate(spec);
  response::validate(settings);

  // Grid points in lexicographic order of the (ascending) axis values.
  std::vector<std::vector<double>> grids;
  for (const auto& axis : spec.axes) {
    auto v = axis.values();
    std::sort(v.begin(), v.end());
    grids.push_back(std::move(v));
  }
  std::vector<std::vector<double>> points{{}};
  for (const auto& grid : grids) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : points) {
      for (double v : grid) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }

  const std::size_t models = model_count(spec);
  std::vector<Parameters> jobs;
  jobs.reserve(points.size() * models);
  for (const auto& point : points) {
    for (std::size_t m = 0; m < models; ++m) {
      Parameters p = spec.fixed;
      for (std::size_t a = 0; a < spec.axes.size(); ++a) set_axis(p, spec.axes[a].axis, point[a]);
      set_model(spec, p, m);
      jobs.push_back(p);
    }
  }

  std::vector<Evaluation> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  auto worker = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Bundle bundle = qline::validate(jobs[i]);
        results[i].result = evaluator ? evaluator(bundle, settings)
                                      : response::transition_probability(bundle, settings);
        results[i].ok = true;
      } catch (const std::exception& e) {
        results[i].error = e.what();
        if (!spec.continue_on_error) abort.store(true);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(spec.threads, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (!spec.continue_on_error) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (!results[i].ok && !results[i].error.empty()) throw SweepError(results[i].error, jobs[i]);
    }
  }

  Dataset out{spec, settings, {}};
  const auto ids = pair_ids(spec);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t pt = 0; pt < points.size(); ++pt) {
    const Parameters& base = jobs[pt * models];
    std::size_t pair = 0;
    for (std::size_t i = 0; i < models; ++i) {
      for (std::size_t j = i + 1; j < models; ++j, ++pair) {
        const auto& a = results[pt * models + i];
        const auto& b = results[pt * models + j];
        ComparisonRecord rec;
        rec.sigma = base.smearing.sigma;
        rec.epsilon = base.cutoff.epsilon;
        rec.ramp = base.switching.ramp;
        rec.plateau = base.switching.plateau;
        rec.pair = ids[pair];
        if (a.ok && b.ok) {
          rec.p_a = a.result.p_over_lambda_sq;
          rec.p_b = b.result.p_over_lambda_sq;
          rec.err_a = a.result.abs_error_estimate;
          rec.err_b = b.result.abs_error_estimate;
          const auto d = relative_difference_checked(rec.p_a, rec.p_b);
          rec.delta = d.delta;
          rec.both_zero = d.both_zero;
        } else {
          rec.ok = false;
          rec.p_a = a.ok ? a.result.p_over_lambda_sq : nan;
          rec.p_b = b.ok ? b.result.p_over_lambda_sq : nan;
          rec.err_a = a.ok ? a.result.abs_error_estimate : nan;
          rec.err_b = b.ok ? b.result.abs_error_estimate : nan;
          rec.delta = nan;
          rec.error = !a.ok ? a.error : b.error;
        }
        out.rows.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2a: return "fig2a";
    case FigureId::Fig2b: return "fig2b";
    case FigureId::Fig2c: return "fig2c";
    case FigureId::Fig2d: return "fig2d";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
  }
  return "?";
}

FigureId parse_figure(std::string_view name) {
  const auto n = lowercase(name);
  for (auto id : {FigureId::Fig2a, FigureId::Fig2b, FigureId::Fig2c, FigureId::Fig2d,
                  FigureId::Fig3, FigureId::Fig4, FigureId::Fig5}) {
    if (n == to_string(id)) return id;
  }
  throw ValidationError("unknown figure '" + std::string(name) + "'");
}

SweepSpec figure_spec(FigureId id, const FigureOptions& options) {
  constexpr double s0 = ScaleDefaults::sigma0;
  constexpr double e0 = ScaleDefaults::epsilon0;
  const auto log_axis = [](Axis axis, double lo, double hi, std::size_t n) {
    return AxisGrid{axis, lo, hi, n, Spacing::Logarithmic};
  };

  SweepSpec spec;
  spec.label = std::string(to_string(id));
  spec.threads = options.threads;
  spec.fixed = default_parameters();
  spec.fixed.switching = {options.r0, options.t0};
  spec.fixed.smearing = {Shape::Gaussian, s0};
  spec.fixed.cutoff = {CutoffModel::Exponential, e0};
  spec.fixed.qubit.process = Process::Emission;

  const std::size_t n1 = options.points_1d;
  const std::size_t n2 = options.points_2d;
  switch (id) {
    case FigureId::Fig2a:
      spec.comparison = Comparison::Shapes;
      spec.axes = {log_axis(Axis::Sigma, 0.1 * s0, 10.0 * s0, n1)};
      break;
    case FigureId::Fig2b:
      spec.comparison = Comparison::Shapes;
      spec.axes = {log_axis(Axis::Epsilon, 0.1 * e0, 20.0 * e0, n1)};
      break;
    case FigureId::Fig2c:
      spec.comparison = Comparison::Cutoffs;
      spec.axes = {log_axis(Axis::Epsilon, 0.1 * e0, 20.0 * e0, n1)};
      break;
    case FigureId::Fig2d:
      spec.comparison = Comparison::Cutoffs;
      spec.axes = {log_axis(Axis::Sigma, 0.1 * s0, 10.0 * s0, n1)};
      break;
    case FigureId::Fig3:
      spec.comparison = Comparison::Cutoffs;
      spec.fixed.qubit.process = Process::Excitation;
      spec.fixed.switching.ramp = 0.1 * options.r0;
      spec.axes = {log_axis(Axis::Plateau, 0.01, 100.0, n1)};
      break;
    case FigureId::Fig4:
    case FigureId::Fig5:
      spec.comparison = Comparison::Cutoffs;
      spec.fixed.qubit.process = id == FigureId::Fig4 ? Process::Excitation : Process::Emission;
      spec.axes = {log_axis(Axis::Ramp, 0.01, 100.0, n2), log_axis(Axis::Plateau, 0.01, 100.0, n2)};
      break;
  }
  return spec;
}

Dataset figure_dataset(FigureId id, const response::QuadratureSettings& settings,
                       const FigureOptions& options, const Evaluator& evaluator) {
  return run_sweep(figure_spec(id, options), settings, evaluator);
}

}  // namespace qline::sweep
