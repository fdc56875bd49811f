#include "qline/formfactor.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qline/numeric.hpp"

namespace qline::formfactor {

using std::numbers::pi;
using std::numbers::sqrt2;

double smearing_value(const SmearingSpec& spec, double x) {
  const double s = spec.sigma;
  const double a = 0.5 * s;
  switch (spec.shape) {
    case Shape::Gaussian:
      return std::exp(-(x * x) / (s * s)) / (s * std::sqrt(pi));
    case Shape::Lorentzian:
      return s / (2.0 * pi) / (x * x + a * a);
    case Shape::Quartic: {
      const double x2 = x * x;
      const double a2 = a * a;
      return sqrt2 * a * a2 / pi / (x2 * x2 + a2 * a2);
    }
    case Shape::Sharp:
      return std::abs(x) < a ? 1.0 / s : 0.0;
  }
  return 0.0;
}

double smearing_ft(const SmearingSpec& spec, double k) {
  const double s = spec.sigma;
  const double ak = std::abs(k);
  switch (spec.shape) {
    case Shape::Gaussian:
      return std::exp(-0.25 * s * s * k * k);
    case Shape::Lorentzian:
      return std::exp(-0.5 * s * ak);
    case Shape::Quartic: {
      // Residues of 1/(x⁴ + a⁴) in the upper half plane.
      const double u = 0.5 * s * ak / sqrt2;
      return std::exp(-u) * (std::cos(u) + std::sin(u));
    }
    case Shape::Sharp:
      return sinc(0.5 * s * ak);
  }
  return 0.0;
}

double cutoff_value(const CutoffSpec& spec, double omega, double k) {
  const double ak = std::abs(k);
  const double eps = spec.epsilon;
  if (spec.model == CutoffModel::Sharp) return ak < omega + eps ? 1.0 : 0.0;
  if (ak <= omega) return 1.0;
  const double u = ak - omega;
  switch (spec.model) {
    case CutoffModel::Gaussian:
      return std::exp(-(u * u) / (2.0 * eps * eps));
    case CutoffModel::Lorentzian:
      return eps * eps / (u * u + eps * eps);
    case CutoffModel::Exponential:
      return std::exp(-u / (sqrt2 * eps));
    case CutoffModel::Sharp:
      break;
  }
  return 0.0;
}

FormFactorPoint effective_form_factor(const SmearingSpec& smearing, const CutoffSpec& cutoff,
                                      double omega, double k) {
  FormFactorPoint p;
  p.k = k;
  p.smearing_ft = smearing_ft(smearing, k);
  p.cutoff_weight = cutoff_value(cutoff, omega, k);
  p.effective_weight = p.smearing_ft * p.smearing_ft * (p.cutoff_weight * p.cutoff_weight);
  return p;
}

double cutoff_kink(double omega) { return omega; }

double cutoff_support_edge(const CutoffSpec& spec, double omega) {
  return spec.model == CutoffModel::Sharp ? omega + spec.epsilon
                                          : std::numeric_limits<double>::infinity();
}

}  // namespace qline::formfactor
