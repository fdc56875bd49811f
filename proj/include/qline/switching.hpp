#pragma once

// Cosine-trapezoid switching function chi(t) and its spectral kernel
// K(w) = |chi^(w)|², the closed form of the double time integral
// ∫dt ∫dt' chi(t) chi(t') e^{iw(t-t')}.

#include <vector>

#include "qline/core.hpp"

namespace qline::switching {

enum class KernelBranch { Regular, RemovableLimit };

struct KernelValue {
  double omega = 0.0;
  double value = 0.0;
  KernelBranch branch = KernelBranch::Regular;
};

/// Distance (relative to pi/r) inside which a point counts as sitting on a
/// removable singularity of the closed form.
inline constexpr double removable_window = 1e-6;

double chi(const SwitchingProfile& profile, double t);

/// Real amplitude chi^(w) = ∫ chi(t) e^{iwt} dt (chi is even, so the
/// transform is real).
///
/// chi is a box of width T + r convolved with a unit-area half-sine bump of
/// width r, so chi^ factors as
///   (T + r) sinc(w (T + r) / 2) · cos(w r / 2) / (1 - (w r / pi)²).
/// The second factor is evaluated as (pi/2) sinc(pi d / 2) / (1 + |y|) with
/// y = w r / pi and d = 1 - |y|, which is exact and has no removable
/// singularity left at |y| = 1.
double transform(const SwitchingProfile& profile, double omega);

KernelValue spectral_kernel(const SwitchingProfile& profile, double omega);

/// Rigorous upper bound on K(w) used for tail certification:
/// min((T+r)², 4/w²), tightened to 64 pi⁴ / (9 r⁴ w⁶) once |w| r ≥ 2 pi.
double kernel_envelope(const SwitchingProfile& profile, double omega);

/// {0, pi/r, 2 pi/(T + 2r)} sorted and deduplicated. The last scale is the
/// oscillation length used to cap quadrature panel widths.
std::vector<double> kernel_breakpoints(const SwitchingProfile& profile);

double oscillation_period(const SwitchingProfile& profile);

}  // namespace qline::switching
