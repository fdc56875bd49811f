#include "qline/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qline/formfactor.hpp"
#include "qline/quadrature.hpp"
#include "qline/switching.hpp"

namespace qline::response {

using std::numbers::pi;

namespace {

// Furthest the tail may be pushed before giving up on certification.
constexpr double kMaxTruncation = 1e12;

double half_line_density(const Bundle& bundle, double k, double kernel_value) {
  const auto ff = formfactor::effective_form_factor(bundle.smearing(), bundle.cutoff(),
                                                    bundle.qubit().omega, k);
  return k / (2.0 * pi) * ff.effective_weight * kernel_value;
}

// ∫_K^∞ k C²(k) dk for k_max = K > Omega, in closed form per model.
double cutoff_moment(const CutoffSpec& cutoff, double omega, double k_max) {
  const double eps = cutoff.epsilon;
  const double u0 = k_max - omega;
  switch (cutoff.model) {
    case CutoffModel::Gaussian:
      return 0.5 * eps * eps * std::exp(-(u0 * u0) / (eps * eps)) +
             omega * 0.5 * eps * std::sqrt(pi) * std::erfc(u0 / eps);
    case CutoffModel::Exponential: {
      const double a = std::numbers::sqrt2 / eps;
      return std::exp(-a * u0) * ((u0 + omega) / a + 1.0 / (a * a));
    }
    case CutoffModel::Lorentzian: {
      const double e2 = eps * eps;
      const double q = u0 * u0 + e2;
      const double first = e2 * e2 / (2.0 * q);
      const double second =
          e2 * e2 / (2.0 * e2 * eps) * (0.5 * pi - std::atan(u0 / eps) - u0 * eps / q);
      return first + omega * second;
    }
    case CutoffModel::Sharp:
      return k_max >= omega + eps ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

// ∫_K^∞ k · envelope(k + s·Omega) dk with the envelope 4/w² below 2pi/r and
// 64 pi⁴ / (9 r⁴ w⁶) above.
double kernel_moment(const SwitchingProfile& profile, double shift, double k_max) {
  const double u = k_max + shift;
  const double w_switch = 2.0 * pi / profile.ramp;
  double total = 0.0;
  const double v = std::max(u, w_switch);
  if (u < w_switch) {
    total += 4.0 * (std::log(w_switch / u) + shift * (1.0 / w_switch - 1.0 / u));
  }
  const double r2 = profile.ramp * profile.ramp;
  const double a = 64.0 * std::pow(pi, 4) / (9.0 * r2 * r2);
  const double v4 = v * v * v * v;
  total += a * (1.0 / (4.0 * v4) - shift / (5.0 * v4 * v));
  return total;
}

}  // namespace

void validate(const QuadratureSettings& s) {
  if (!(s.rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  if (!(s.abs_tol > 0.0)) throw ValidationError("abs_tol must be positive");
  if (s.max_panels < 1) throw ValidationError("max_panels must be at least 1");
  if (!(s.tail_safety > 0.0)) throw ValidationError("tail_safety must be positive");
}

double integrand(const Bundle& bundle, double k) {
  const double w = k + bundle.qubit().kernel_sign() * bundle.qubit().omega;
  return half_line_density(bundle, k, switching::spectral_kernel(bundle.switching(), w).value);
}

std::vector<double> integration_breakpoints(const Bundle& bundle) {
  const double omega = bundle.qubit().omega;
  const double s = bundle.qubit().kernel_sign();
  const double pr = pi / bundle.switching().ramp;
  std::vector<double> points{0.0, formfactor::cutoff_kink(omega)};
  if (bundle.cutoff().model == CutoffModel::Sharp) {
    points.push_back(formfactor::cutoff_support_edge(bundle.cutoff(), omega));
  }
  // k + s·Omega = target  =>  k = target - s·Omega
  for (double target : {0.0, pr, -pr}) {
    const double k = target - s * omega;
    if (k >= 0.0) points.push_back(k);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double panel_width_cap(const Bundle& bundle) {
  return 0.5 * switching::oscillation_period(bundle.switching());
}

double tail_bound(const Bundle& bundle, double k_max) {
  const double omega = bundle.qubit().omega;
  const double shift = bundle.qubit().kernel_sign() * omega;
  const auto& cutoff = bundle.cutoff();
  if (k_max >= formfactor::cutoff_support_edge(cutoff, omega)) return 0.0;
  if (!(k_max > omega) || !(k_max + shift > 0.0)) return std::numeric_limits<double>::infinity();
  const double c = formfactor::cutoff_value(cutoff, omega, k_max);
  const double by_cutoff_value = c * c * kernel_moment(bundle.switching(), shift, k_max);
  const double by_kernel_value = switching::kernel_envelope(bundle.switching(), k_max + shift) *
                                 cutoff_moment(cutoff, omega, k_max);
  return std::min(by_cutoff_value, by_kernel_value) / (2.0 * pi);
}

ProbabilityResult transition_probability(const Bundle& bundle, const QuadratureSettings& settings) {
  const SwitchingProfile profile = bundle.switching();
  return transition_probability_with_kernel(bundle, settings, [profile](double w) {
    return switching::spectral_kernel(profile, w).value;
  });
}

ProbabilityResult transition_probability_with_kernel(const Bundle& bundle,
                                                     const QuadratureSettings& settings,
                                                     const KernelFunction& kernel) {
  validate(settings);
  const double omega = bundle.qubit().omega;
  const double shift = bundle.qubit().kernel_sign() * omega;
  const auto breaks = integration_breakpoints(bundle);
  const double cap = panel_width_cap(bundle);

  quad::AdaptiveIntegrator integrator(
      [&](double k) { return half_line_density(bundle, k, kernel(k + shift)); });

  const double edge = formfactor::cutoff_support_edge(bundle.cutoff(), omega);
  const bool truncated = std::isfinite(edge);
  double k_max = truncated
                     ? edge
                     : std::max({2.0 * breaks.back(), omega + 10.0 * bundle.cutoff().epsilon,
                                 4.0 * omega});
  integrator.add_interval(0.0, k_max, breaks, cap);

  double tail = 0.0;
  try {
    while (true) {
      integrator.refine(settings.rel_tol, settings.abs_tol, settings.max_panels);
      if (truncated) break;
      const double estimate = integrator.value();
      tail = tail_bound(bundle, k_max);
      if (tail <= std::max(settings.rel_tol * estimate / settings.tail_safety, settings.abs_tol)) {
        break;
      }
      if (k_max > kMaxTruncation) {
        throw QuadratureError(QuadratureFailure::TailBoundUnavailable, "tail bound unavailable",
                              estimate, integrator.error() + tail);
      }
      integrator.add_interval(k_max, 2.0 * k_max, {}, cap);
      k_max *= 2.0;
    }
  } catch (const quad::PanelLimitExceeded& e) {
    throw QuadratureError(QuadratureFailure::MaxPanelsExceeded, "max panels exceeded", e.estimate(),
                          e.error() + tail);
  }

  ProbabilityResult result;
  result.p_over_lambda_sq = integrator.value();
  const double lambda = bundle.qubit().lambda;
  result.p = (lambda * lambda) * result.p_over_lambda_sq;
  result.tail_bound = tail;
  result.abs_error_estimate = integrator.error() + tail;
  result.panels_used = integrator.panel_count();
  result.k_max = k_max;
  return result;
}

double coupling_from_spin_boson(double alpha_sb) {
  if (!(alpha_sb >= 0.0)) throw ValidationError("alpha_sb must be non-negative");
  return std::sqrt(2.0 * pi * alpha_sb);
}

}  // namespace qline::response
