#include "qline/switching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qline/numeric.hpp"

namespace qline::switching {

using std::numbers::pi;

double chi(const SwitchingProfile& profile, double t) {
  const double half = 0.5 * profile.plateau;
  const double r = profile.ramp;
  const double at = std::abs(t);
  if (at <= half) return 1.0;
  if (at > half + r) return 0.0;
  return 0.5 + 0.5 * std::cos(pi / r * (at - half));
}

double transform(const SwitchingProfile& profile, double omega) {
  const double r = profile.ramp;
  const double width = profile.plateau + r;
  const double box = width * sinc(0.5 * omega * width);
  const double y = std::abs(omega) * r / pi;
  const double d = 1.0 - y;
  const double bump = 0.5 * pi * sinc(0.5 * pi * d) / (1.0 + y);
  return box * bump;
}

KernelValue spectral_kernel(const SwitchingProfile& profile, double omega) {
  const double amplitude = transform(profile, omega);
  const double scale = pi / profile.ramp;
  const double window = removable_window * scale;
  const bool near_limit =
      std::abs(omega) < window || std::abs(std::abs(omega) - scale) < window;
  return {omega, amplitude * amplitude,
          near_limit ? KernelBranch::RemovableLimit : KernelBranch::Regular};
}

double kernel_envelope(const SwitchingProfile& profile, double omega) {
  const double r = profile.ramp;
  const double width = profile.plateau + r;
  const double w = std::abs(omega);
  double bound = width * width;
  if (w > 0.0) bound = std::min(bound, 4.0 / (w * w));
  if (w * r >= 2.0 * pi) {
    const double w3 = w * w * w;
    const double r2 = r * r;
    bound = std::min(bound, 64.0 * std::pow(pi, 4) / (9.0 * r2 * r2 * w3 * w3));
  }
  return bound;
}

double oscillation_period(const SwitchingProfile& profile) {
  return 2.0 * pi / (profile.plateau + 2.0 * profile.ramp);
}

std::vector<double> kernel_breakpoints(const SwitchingProfile& profile) {
  std::vector<double> points{0.0, pi / profile.ramp, oscillation_period(profile)};
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace qline::switching
