#include "qline/oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>
#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qline/formfactor.hpp"
#include "qline/quadrature.hpp"

namespace qline::oracle {

namespace {

constexpr std::size_t kTimeOrder = 16;
constexpr std::size_t kSpaceOrder = 20;

inline void sincos_r(double x, double& s, double& c) {
  s = std::sin(x);
  c = std::cos(x);
}
inline void sincos_r(__float128 x, __float128& s, __float128& c) { sincosq(x, &s, &c); }

template <typename Real>
Real pi_r();
template <>
double pi_r<double>() {
  return std::numbers::pi;
}
template <>
__float128 pi_r<__float128>() {
  return M_PIq;
}

template <typename Real>
const quad::GaussLegendre<Real>& time_rule();
template <>
const quad::GaussLegendre<double>& time_rule<double>() {
  static const auto rule = quad::gauss_legendre(kTimeOrder);
  return rule;
}
template <>
const quad::GaussLegendre<__float128>& time_rule<__float128>() {
  static const auto rule = quad::gauss_legendre_quad(kTimeOrder);
  return rule;
}

// A piece of the support where chi is either 1 or 1/2 + 1/2 cos(pi (t - anchor) / r).
template <typename Real>
struct Segment {
  Real begin;
  Real end;
  bool ramp;
  Real anchor;
};

template <typename Real>
std::vector<Segment<Real>> segments(const SwitchingProfile& profile) {
  const Real half = Real(profile.plateau) / 2;
  const Real r = Real(profile.ramp);
  std::vector<Segment<Real>> out;
  out.push_back({-half - r, -half, true, -half});
  if (profile.plateau > 0.0) out.push_back({-half, half, false, Real(0)});
  out.push_back({half, half + r, true, half});
  return out;
}

std::size_t panel_count(double length, double omega, std::size_t min_nodes, std::size_t order) {
  const auto from_grid = (min_nodes + order - 1) / order;
  const auto from_oscillation =
      static_cast<std::size_t>(std::ceil(std::abs(omega) * length / std::numbers::pi));
  return std::max<std::size_t>({from_grid, from_oscillation, 1});
}

template <typename Real>
ComplexValue transform_impl(const SwitchingProfile& profile, double omega_d,
                            const OracleSettings& settings) {
  const auto& rule = time_rule<Real>();
  const Real omega = Real(omega_d);
  const Real pi = pi_r<Real>();
  const Real r = Real(profile.ramp);
  Real re = 0;
  Real im = 0;
  std::vector<Real> cw(kTimeOrder), sw(kTimeOrder), cr(kTimeOrder), sr(kTimeOrder);
  for (const auto& seg : segments<Real>(profile)) {
    const Real length = seg.end - seg.begin;
    const auto panels = panel_count(static_cast<double>(length), omega_d, settings.time_grid_points,
                                    kTimeOrder);
    const Real h = length / Real(panels);
    const Real half_h = h / 2;
    // Node offsets inside a panel are identical for every panel of the
    // segment, so their phases are rotated in rather than recomputed.
    for (std::size_t j = 0; j < kTimeOrder; ++j) {
      sincos_r(omega * half_h * rule.nodes[j], sw[j], cw[j]);
      sincos_r(pi / r * half_h * rule.nodes[j], sr[j], cr[j]);
    }
    Real seg_re = 0;
    Real seg_im = 0;
    for (std::size_t p = 0; p < panels; ++p) {
      const Real center = seg.begin + (Real(p) + Real(0.5)) * h;
      Real s0, c0;
      sincos_r(omega * center, s0, c0);
      Real sp = 0, cp = 1;
      if (seg.ramp) sincos_r(pi / r * (center - seg.anchor), sp, cp);
      Real panel_re = 0;
      Real panel_im = 0;
      for (std::size_t j = 0; j < kTimeOrder; ++j) {
        Real chi = 1;
        if (seg.ramp) chi = (1 + (cp * cr[j] - sp * sr[j])) / 2;
        const Real wc = rule.weights[j] * chi;
        panel_re += wc * (c0 * cw[j] - s0 * sw[j]);
        panel_im += wc * (s0 * cw[j] + c0 * sw[j]);
      }
      seg_re += panel_re;
      seg_im += panel_im;
    }
    re += seg_re * half_h;
    im += seg_im * half_h;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// ∫_X^∞ cos(kx) x^{-m} dx for m = 1..max_m, by the integration-by-parts
// recurrence seeded with Ci and Si.
std::vector<double> power_cosine_tails(double k, double x_max, int max_m) {
  std::vector<double> cos_moments(static_cast<std::size_t>(max_m) + 1, 0.0);
  if (k == 0.0) {
    for (int m = 2; m <= max_m; ++m) cos_moments[m] = std::pow(x_max, 1 - m) / (m - 1);
    return cos_moments;
  }
  const double kx = k * x_max;
  double c = -gsl_sf_Ci(kx);
  double s = 0.5 * std::numbers::pi - gsl_sf_Si(kx);
  cos_moments[1] = c;
  const double ck = std::cos(kx);
  const double sk = std::sin(kx);
  for (int m = 2; m <= max_m; ++m) {
    const double xp = std::pow(x_max, 1 - m) / (m - 1);
    const double next_c = ck * xp - k / (m - 1) * s;
    const double next_s = sk * xp + k / (m - 1) * c;
    c = next_c;
    s = next_s;
    cos_moments[m] = c;
  }
  return cos_moments;
}

// Analytic 2 ∫_X^∞ F(x) cos(kx) dx for the power-law shapes via
// F(x) = amplitude · Σ_n (-a^p)^n x^{-p(n+1)} (valid for x > a).
double power_law_tail(const SmearingSpec& spec, double k, double x_max, double tolerance) {
  const double a = 0.5 * spec.sigma;
  const int p = spec.shape == Shape::Lorentzian ? 2 : 4;
  const double amplitude = spec.shape == Shape::Lorentzian
                               ? spec.sigma / (2.0 * std::numbers::pi)
                               : std::numbers::sqrt2 * a * a * a / std::numbers::pi;
  const double ratio = std::pow(a / x_max, p);
  if (!(ratio < 0.5)) throw OracleError("tail not certified");
  // Smallest N whose neglected remainder integrates below the tolerance.
  int terms = 0;
  for (;; ++terms) {
    const int m = p * (terms + 1);
    const double remainder = 2.0 * amplitude * std::pow(a, p * terms) * std::pow(x_max, 1 - m) /
                             ((m - 1) * (1.0 - ratio));
    if (remainder < 1e-3 * tolerance) break;
    if (terms > 40) throw OracleError("tail not certified");
  }
  if (terms == 0) return 0.0;
  const auto moments = power_cosine_tails(k, x_max, p * terms);
  double sum = 0.0;
  for (int n = terms - 1; n >= 0; --n) {
    sum += std::pow(-std::pow(a, p), n) * moments[static_cast<std::size_t>(p * (n + 1))];
  }
  return 2.0 * amplitude * sum;
}

double cosine_integral(const SmearingSpec& spec, double k, double x_max) {
  static const auto rule = quad::gauss_legendre(kSpaceOrder);
  double width = spec.sigma / 4.0;
  if (k != 0.0) width = std::min(width, std::numbers::pi / std::abs(k));
  const auto panels = static_cast<std::size_t>(std::ceil(x_max / width));
  const double h = x_max / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double center = (static_cast<double>(i) + 0.5) * h;
    double panel = 0.0;
    for (std::size_t j = 0; j < kSpaceOrder; ++j) {
      const double x = center + 0.5 * h * rule.nodes[j];
      panel += rule.weights[j] * formfactor::smearing_value(spec, x) * std::cos(k * x);
    }
    total += panel * 0.5 * h;
  }
  return 2.0 * total;
}

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};

}  // namespace

void validate(const OracleSettings& s) {
  if (s.time_grid_points == 0) throw ValidationError("time_grid_points must be positive");
  if (!(s.ft_truncation > 0.0)) throw ValidationError("ft_truncation must be positive");
  if (!(s.rel_tol > 0.0)) throw ValidationError("rel_tol must be positive");
  if (s.spot_check_grid_points == 0) throw ValidationError("spot_check_grid_points must be positive");
}

ComplexValue switching_transform_numeric(const SwitchingProfile& profile, double omega,
                                         const OracleSettings& settings) {
  validate(settings);
  return settings.precision == Precision::Quad ? transform_impl<__float128>(profile, omega, settings)
                                               : transform_impl<double>(profile, omega, settings);
}

double kernel_numeric(const SwitchingProfile& profile, double omega, const OracleSettings& settings) {
  const auto z = switching_transform_numeric(profile, omega, settings);
  return z.re * z.re + z.im * z.im;
}

double kernel_numeric_2d(const SwitchingProfile& profile, double omega,
                         const OracleSettings& settings) {
  validate(settings);
  const auto& rule = time_rule<double>();
  std::vector<double> t;
  std::vector<double> weight;
  for (const auto& seg : segments<double>(profile)) {
    const double length = seg.end - seg.begin;
    const auto panels =
        panel_count(length, omega, settings.spot_check_grid_points, kTimeOrder);
    const double h = length / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double center = seg.begin + (static_cast<double>(p) + 0.5) * h;
      for (std::size_t j = 0; j < kTimeOrder; ++j) {
        const double x = center + 0.5 * h * rule.nodes[j];
        const double chi =
            seg.ramp ? 0.5 + 0.5 * std::cos(std::numbers::pi / profile.ramp * (x - seg.anchor))
                     : 1.0;
        t.push_back(x);
        weight.push_back(0.5 * h * rule.weights[j] * chi);
      }
    }
  }
  double re = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) row += weight[j] * std::cos(omega * (t[i] - t[j]));
    re += weight[i] * row;
  }
  return re;
}

double smearing_ft_numeric(const SmearingSpec& spec, double k, const OracleSettings& settings) {
  static const GslQuiet quiet;
  validate(settings);
  switch (spec.shape) {
    case Shape::Sharp:
      return cosine_integral(spec, k, 0.5 * spec.sigma);
    case Shape::Gaussian: {
      const double x_max = settings.ft_truncation * spec.sigma;
      // 2 ∫_X^∞ F ≤ erfc(X / sigma)
      if (std::erfc(settings.ft_truncation) > settings.rel_tol) throw OracleError("tail not certified");
      return cosine_integral(spec, k, x_max);
    }
    case Shape::Lorentzian:
    case Shape::Quartic: {
      const double x_max = settings.ft_truncation * spec.sigma;
      return cosine_integral(spec, k, x_max) + power_law_tail(spec, k, x_max, settings.rel_tol);
    }
  }
  return 0.0;
}

double smearing_norm_numeric(const SmearingSpec& spec, const OracleSettings& settings) {
  return smearing_ft_numeric(spec, 0.0, settings);
}

ProbabilityResult probability_numeric(const Bundle& bundle,
                                      const response::QuadratureSettings& quadrature,
                                      const OracleSettings& settings) {
  validate(settings);
  const SwitchingProfile profile = bundle.switching();
  return response::transition_probability_with_kernel(
      bundle, quadrature, [&](double w) { return kernel_numeric(profile, w, settings); });
}

}  // namespace qline::oracle
