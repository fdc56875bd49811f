#pragma once

// Leading-order transition probability
//
//   P = (lambda² / 4 pi) ∫ dk F~²(k) C²(k) |k| K(|k| + s·Omega),
//
// s = +1 for vacuum excitation and s = -1 for spontaneous emission. The
// integrand is even in k, so the integral is evaluated on the half line with
// a factor two.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qline/core.hpp"

namespace qline::response {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-30;
  std::size_t max_panels = 1'000'000;
  double tail_safety = 1e2;
};

void validate(const QuadratureSettings& settings);

enum class QuadratureFailure { MaxPanelsExceeded, TailBoundUnavailable };

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(QuadratureFailure kind, const char* what, double partial, double bound)
      : std::runtime_error(what), kind_(kind), partial_(partial), bound_(bound) {}
  [[nodiscard]] QuadratureFailure kind() const noexcept { return kind_; }
  /// Partial estimate of P/lambda² and its error bound at the point of failure.
  [[nodiscard]] double partial_estimate() const noexcept { return partial_; }
  [[nodiscard]] double error_bound() const noexcept { return bound_; }

 private:
  QuadratureFailure kind_;
  double partial_;
  double bound_;
};

/// Kernel K(w) used inside the k integral; the analytic closed form by default,
/// the numeric double time integral in the oracle.
using KernelFunction = std::function<double(double)>;

/// Half-line integrand 2 · (1/4pi) · F~²(k) · C²(k) · k · K(k + s·Omega), k ≥ 0.
double integrand(const Bundle& bundle, double k);

/// Sorted wavenumbers where panels must end: 0, the cutoff kink at Omega, the
/// sharp-cutoff edge, and the k ≥ 0 preimages of the kernel's removable
/// points {0, ±pi/r}.
std::vector<double> integration_breakpoints(const Bundle& bundle);

/// Panel-width cap: half the kernel oscillation period 2 pi / (T + 2r).
double panel_width_cap(const Bundle& bundle);

/// Closed-form upper bound on ∫_{k_max}^∞ of the half-line integrand.
double tail_bound(const Bundle& bundle, double k_max);

ProbabilityResult transition_probability(const Bundle& bundle,
                                         const QuadratureSettings& settings = {});

/// Same k-quadrature with a caller-supplied kernel.
ProbabilityResult transition_probability_with_kernel(const Bundle& bundle,
                                                     const QuadratureSettings& settings,
                                                     const KernelFunction& kernel);

/// lambda = sqrt(2 pi alpha) for an Ohmic spin-boson coupling alpha.
double coupling_from_spin_boson(double alpha_sb);

}  // namespace qline::response
