#pragma once

// Model-comparison sweeps: pairwise relative differences
// Delta_AB = |P_A - P_B| / max(P_A, P_B) across grids of sigma, eps, r and T.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qline/core.hpp"
#include "qline/response.hpp"

namespace qline::sweep {

enum class Axis { Sigma, Epsilon, Ramp, Plateau };
enum class Spacing { Linear, Logarithmic };
enum class Comparison { Shapes, Cutoffs };

std::string_view to_string(Axis axis);
std::string_view to_string(Spacing spacing);
std::string_view to_string(Comparison comparison);
Axis parse_axis(std::string_view name);
Spacing parse_spacing(std::string_view name);
Comparison parse_comparison(std::string_view name);

struct AxisGrid {
  Axis axis = Axis::Sigma;
  double lower = 1.0;
  double upper = 1.0;
  std::size_t points = 1;
  Spacing spacing = Spacing::Logarithmic;

  /// Grid values from `lower` to `upper` inclusive; a single point sits at
  /// `lower`.
  [[nodiscard]] std::vector<double> values() const;
};

struct SweepSpec {
  std::string label;
  Parameters fixed;
  std::vector<AxisGrid> axes;
  Comparison comparison = Comparison::Cutoffs;
  std::vector<Shape> shapes{Shape::Gaussian, Shape::Lorentzian, Shape::Quartic, Shape::Sharp};
  std::vector<CutoffModel> cutoffs{CutoffModel::Gaussian, CutoffModel::Lorentzian,
                                   CutoffModel::Exponential, CutoffModel::Sharp};
  bool continue_on_error = false;
  std::size_t threads = 1;
};

/// Throws ValidationError on empty or non-monotone grids, repeated axes,
/// fewer than two models, or an invalid fixed parameter set.
void validate(const SweepSpec& spec);

struct ComparisonRecord {
  double sigma = 0.0;
  double epsilon = 0.0;
  double ramp = 0.0;
  double plateau = 0.0;
  std::string pair;
  double p_a = 0.0;  // P/lambda² for model A
  double p_b = 0.0;
  double delta = 0.0;
  double err_a = 0.0;
  double err_b = 0.0;
  bool ok = true;
  bool both_zero = false;
  std::string error;
};

struct RelativeDifference {
  double delta = 0.0;
  bool both_zero = false;  // 0/0 case, reported as delta = 0
};

RelativeDifference relative_difference_checked(double p_a, double p_b);
double relative_difference(double p_a, double p_b);

/// A sweep point that failed to integrate, with the parameter tuple attached.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, Parameters params)
      : std::runtime_error(what), params_(params) {}
  [[nodiscard]] const Parameters& parameters() const noexcept { return params_; }

 private:
  Parameters params_;
};

/// Hook for evaluating one probability; lets the CLI interpose a cache.
using Evaluator = std::function<ProbabilityResult(const Bundle&, const response::QuadratureSettings&)>;

struct Dataset {
  SweepSpec spec;
  response::QuadratureSettings settings;
  std::vector<ComparisonRecord> rows;
};

/// Pair identifiers of the spec's model set, e.g. "GL", "GE", ... in set order.
std::vector<std::string> pair_ids(const SweepSpec& spec);

/// Evaluates every (grid point, model) probability once, then every pair.
/// Rows are ordered lexicographically by axis values (in the spec's axis
/// order), then by pair in pair_ids order, independent of evaluation order or threads.
Dataset run_sweep(const SweepSpec& spec, const response::QuadratureSettings& settings,
                  const Evaluator& evaluator = {});

enum class FigureId { Fig2a, Fig2b, Fig2c, Fig2d, Fig3, Fig4, Fig5 };

std::string_view to_string(FigureId id);
FigureId parse_figure(std::string_view name);

struct FigureOptions {
  std::size_t points_1d = 30;
  std::size_t points_2d = 20;
  double r0 = ScaleDefaults::r0;
  double t0 = ScaleDefaults::t0;
  std::size_t threads = 1;
};

/// Pre-configured sweep for each figure of the model-comparison study.
SweepSpec figure_spec(FigureId id, const FigureOptions& options = {});

Dataset figure_dataset(FigureId id, const response::QuadratureSettings& settings,
                       const FigureOptions& options = {}, const Evaluator& evaluator = {});

}  // namespace qline::sweep
