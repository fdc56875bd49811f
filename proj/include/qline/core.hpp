#pragma once

// Domain types shared by every qline module.
//
// All quantities are dimensionless in units of the reference gap Omega0
// (hbar = c = 1): frequencies and wavenumbers in Omega0, lengths and times in
// 1/Omega0.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qline {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Process { Excitation, Emission };

enum class Shape { Gaussian, Lorentzian, Quartic, Sharp };

enum class CutoffModel { Gaussian, Lorentzian, Exponential, Sharp };

struct QubitConfig {
  double omega = 1.0;
  double lambda = 1.0;
  Process process = Process::Excitation;

  /// +1 for excitation, -1 for emission. Emission is the substitution
  /// Omega -> -Omega in the kernel argument and nothing else.
  [[nodiscard]] double kernel_sign() const noexcept {
    return process == Process::Excitation ? 1.0 : -1.0;
  }
};

struct SmearingSpec {
  Shape shape = Shape::Gaussian;
  double sigma = 1e-4;
};

struct CutoffSpec {
  CutoffModel model = CutoffModel::Exponential;
  double epsilon = 5.0;
};

/// Cosine-trapezoid switching: ramps of duration `ramp` around a plateau of
/// duration `plateau`.
struct SwitchingProfile {
  double ramp = 1.0;
  double plateau = 1.0;

  [[nodiscard]] double support_half_width() const noexcept { return 0.5 * plateau + ramp; }
};

struct ProbabilityResult {
  double p_over_lambda_sq = 0.0;
  double p = 0.0;
  double abs_error_estimate = 0.0;  // on the p_over_lambda_sq scale, includes tail_bound
  std::size_t panels_used = 0;
  double tail_bound = 0.0;
  double k_max = 0.0;  // truncation wavenumber (infinite support cut)
};

/// Reference scales of the model in Omega0 units.
struct ScaleDefaults {
  static constexpr double omega0 = 1.0;
  static constexpr double epsilon0 = 5.0;
  static constexpr double sigma0 = 1e-4;
  static constexpr double r0 = 1.0;
  static constexpr double t0 = 1.0;
};

struct Parameters {
  QubitConfig qubit;
  SmearingSpec smearing;
  CutoffSpec cutoff;
  SwitchingProfile switching;
};

/// A parameter set that passed `validate`. Only `validate` constructs one.
class Bundle {
 public:
  [[nodiscard]] const QubitConfig& qubit() const noexcept { return params_.qubit; }
  [[nodiscard]] const SmearingSpec& smearing() const noexcept { return params_.smearing; }
  [[nodiscard]] const CutoffSpec& cutoff() const noexcept { return params_.cutoff; }
  [[nodiscard]] const SwitchingProfile& switching() const noexcept { return params_.switching; }
  [[nodiscard]] const Parameters& parameters() const noexcept { return params_; }

 private:
  explicit Bundle(const Parameters& p) : params_(p) {}
  Parameters params_;

  friend Bundle validate(const QubitConfig&, const SmearingSpec&, const CutoffSpec&,
                         const SwitchingProfile&);
};

/// Checks every domain invariant, throwing ValidationError naming the first
/// violated one.
Bundle validate(const QubitConfig& config, const SmearingSpec& smearing, const CutoffSpec& cutoff,
                const SwitchingProfile& switching);

inline Bundle validate(const Parameters& p) {
  return validate(p.qubit, p.smearing, p.cutoff, p.switching);
}

Parameters default_parameters();

// Names used by the CLI, the spec-file reader and dataset metadata.
std::string_view to_string(Process p);
std::string_view to_string(Shape s);
std::string_view to_string(CutoffModel m);
/// Single-letter tags used in pair identifiers ("ES" = exponential vs sharp).
char tag(Shape s);
char tag(CutoffModel m);

Process parse_process(std::string_view name);
Shape parse_shape(std::string_view name);
CutoffModel parse_cutoff(std::string_view name);

}  // namespace qline
