#pragma once

// Brute-force references for every closed form in the library. Nothing in
// here calls the closed-form kernel or transforms; the only shared piece is
// the k-quadrature driver, which is the thing the oracle probability is meant
// to exercise with a different kernel.

#include <cstddef>
#include <stdexcept>

#include "qline/core.hpp"
#include "qline/response.hpp"

namespace qline::oracle {

enum class Precision { Double, Quad };

struct OracleSettings {
  /// Minimum Gauss-Legendre nodes per switching segment (ramp up, plateau,
  /// ramp down). Panels also never exceed half an oscillation of e^{iwt}.
  std::size_t time_grid_points = 4096;
  /// Smearing transforms integrate F over [0, ft_truncation · sigma] and
  /// handle the rest analytically.
  double ft_truncation = 40.0;
  double rel_tol = 1e-8;
  /// Arithmetic for the 1-D time transform. Quad (binary128) keeps the
  /// strongly cancelling high-frequency transforms accurate.
  Precision precision = Precision::Quad;
  /// Nodes per segment for the literal two-dimensional time integral.
  std::size_t spot_check_grid_points = 256;
};

void validate(const OracleSettings& settings);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
};

/// ∫ chi(t) e^{iwt} dt by composite Gauss-Legendre over each segment.
ComplexValue switching_transform_numeric(const SwitchingProfile& profile, double omega,
                                         const OracleSettings& settings = {});

/// ∫∫ chi(t) chi(t') e^{iw(t-t')} dt dt' evaluated as |1-D transform|².
double kernel_numeric(const SwitchingProfile& profile, double omega,
                      const OracleSettings& settings = {});

/// The same double integral as a literal tensor-product quadrature over
/// (t, t'). O(N²); intended for spot checks at moderate w.
double kernel_numeric_2d(const SwitchingProfile& profile, double omega,
                         const OracleSettings& settings = {});

/// 2 ∫_0^∞ F(x) cos(kx) dx. Gaussian tails are bounded, Lorentzian and quartic
/// power-law tails are integrated analytically. Throws OracleError("tail not
/// certified") when the truncation cannot meet settings.rel_tol.
double smearing_ft_numeric(const SmearingSpec& spec, double k, const OracleSettings& settings = {});

/// ∫ F(x) dx by the same route (k = 0).
double smearing_norm_numeric(const SmearingSpec& spec, const OracleSettings& settings = {});

/// Transition probability with kernel_numeric in place of the closed form.
ProbabilityResult probability_numeric(const Bundle& bundle,
                                      const response::QuadratureSettings& quadrature = {},
                                      const OracleSettings& settings = {});

}  // namespace qline::oracle
