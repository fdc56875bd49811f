#include "qline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qline/formfactor.hpp"
#include "qline/switching.hpp"

namespace qline::verify {

namespace {

constexpr Shape kShapes[] = {Shape::Gaussian, Shape::Lorentzian, Shape::Quartic, Shape::Sharp};

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

KernelCheck check_kernels(const KernelCheckOptions& options) {
  std::mt19937_64 rng(options.seed);
  KernelCheck worst;
  const double log_lo = std::log(1e-3);
  const double log_hi = std::log(1e3);
  for (std::size_t i = 0; i < options.profiles; ++i) {
    const SwitchingProfile profile{log_uniform(rng, 0.05, 50.0), log_uniform(rng, 0.05, 50.0)};
    const double width = profile.plateau + profile.ramp;
    const auto n = options.omegas_per_profile;
    for (std::size_t j = 0; j < n; ++j) {
      // One draw per equal-width stratum of log(omega).
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double f = (static_cast<double>(j) + u(rng)) / static_cast<double>(n);
      const double omega = std::exp(log_lo + f * (log_hi - log_lo));
      const double closed = switching::spectral_kernel(profile, omega).value * options.kernel_scale;
      const double numeric = oracle::kernel_numeric(profile, omega, options.oracle);
      const double dev =
          std::abs(closed - numeric) / std::max(numeric, 1e-30 * width * width);
      ++worst.samples;
      if (dev >= worst.max_rel_dev) {
        worst.max_rel_dev = dev;
        worst.ramp = profile.ramp;
        worst.plateau = profile.plateau;
        worst.omega = omega;
      }
    }
  }
  return worst;
}

TransformCheck check_transforms(const TransformCheckOptions& options) {
  TransformCheck worst;
  for (Shape shape : kShapes) {
    for (double sigma : options.sigmas) {
      const SmearingSpec spec{shape, sigma};
      const double k_hi = 50.0 / sigma;
      for (std::size_t i = 0; i < options.k_points; ++i) {
        const double k =
            options.k_points == 1 ? 0.0
                                  : k_hi * static_cast<double>(i) / static_cast<double>(options.k_points - 1);
        const double dev = std::abs(formfactor::smearing_ft(spec, k) -
                                    oracle::smearing_ft_numeric(spec, k, options.oracle));
        ++worst.samples;
        if (dev >= worst.max_abs_dev) {
          worst.max_abs_dev = dev;
          worst.shape = shape;
          worst.sigma = sigma;
          worst.k = k;
        }
      }
    }
  }
  return worst;
}

NormalizationCheck check_normalization(const TransformCheckOptions& options) {
  NormalizationCheck worst;
  for (Shape shape : kShapes) {
    for (double sigma : options.sigmas) {
      const SmearingSpec spec{shape, sigma};
      const double dev = std::abs(oracle::smearing_norm_numeric(spec, options.oracle) - 1.0);
      if (dev >= worst.max_abs_dev) worst = {dev, shape, sigma};
    }
  }
  return worst;
}

std::string describe(const KernelCheck& c) {
  std::ostringstream os;
  os.precision(6);
  os << "max rel dev " << c.max_rel_dev << " over " << c.samples << " samples; worst at r="
     << c.ramp << " T=" << c.plateau << " omega=" << c.omega;
  return os.str();
}

std::string describe(const TransformCheck& c) {
  std::ostringstream os;
  os.precision(6);
  os << "max abs dev " << c.max_abs_dev << " over " << c.samples << " samples; worst at shape="
     << to_string(c.shape) << " sigma=" << c.sigma << " k=" << c.k;
  return os.str();
}

std::string describe(const NormalizationCheck& c) {
  std::ostringstream os;
  os.precision(6);
  os << "max |norm - 1| " << c.max_abs_dev << "; worst at shape=" << to_string(c.shape)
     << " sigma=" << c.sigma;
  return os.str();
}

}  // namespace qline::verify
