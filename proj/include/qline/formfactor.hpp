#pragma once

// Smearing profiles F_sigma(x), their Fourier transforms, the UV cutoff models
// C_eps(k) and the effective form factor F~²(k)·C²(k).

#include "qline/core.hpp"

namespace qline::formfactor {

struct FormFactorPoint {
  double k = 0.0;
  double smearing_ft = 1.0;
  double cutoff_weight = 1.0;
  double effective_weight = 1.0;  // smearing_ft² · cutoff_weight²
};

/// Position-space density F_sigma(x); every shape integrates to one.
double smearing_value(const SmearingSpec& spec, double x);

/// Closed-form transform F~(k) = ∫ F(x) e^{ikx} dx. Real and even in k.
double smearing_ft(const SmearingSpec& spec, double k);

/// Cutoff weight C_eps(k); identically one for |k| < omega. The sharp model is
/// the indicator of |k| < omega + eps.
double cutoff_value(const CutoffSpec& spec, double omega, double k);

FormFactorPoint effective_form_factor(const SmearingSpec& smearing, const CutoffSpec& cutoff,
                                      double omega, double k);

/// Every cutoff row has a kink at |k| = omega; the sharp row also jumps at
/// omega + eps. Returned as the non-negative k where quadrature panels must end.
double cutoff_kink(double omega);

/// Upper edge of the support of C, or +infinity for the smooth models.
double cutoff_support_edge(const CutoffSpec& spec, double omega);

}  // namespace qline::formfactor
