#pragma once

// Oracle-versus-closed-form equivalence suites, shared by `qline verify` and
// the acceptance tests.

#include <cstddef>
#include <cstdint>
#include <string>

#include "qline/core.hpp"
#include "qline/oracle.hpp"

namespace qline::verify {

struct KernelCheck {
  double max_rel_dev = 0.0;
  // Worst offending sample.
  double ramp = 0.0;
  double plateau = 0.0;
  double omega = 0.0;
  std::size_t samples = 0;
};

struct KernelCheckOptions {
  std::size_t profiles = 20;         // random (r, T) pairs, log-uniform in [0.05, 50]²
  std::size_t omegas_per_profile = 5;  // stratified log-uniform in [1e-3, 1e3]
  std::uint64_t seed = 20240601;
  /// Test hook: multiplies the closed-form kernel, to prove the check can fail.
  double kernel_scale = 1.0;
  oracle::OracleSettings oracle;
};

/// |K_closed − K_numeric| / max(K_numeric, 1e-30 (T + r)²), maximised.
KernelCheck check_kernels(const KernelCheckOptions& options = {});

struct TransformCheck {
  double max_abs_dev = 0.0;
  Shape shape = Shape::Gaussian;
  double sigma = 0.0;
  double k = 0.0;
  std::size_t samples = 0;
};

struct TransformCheckOptions {
  std::size_t k_points = 101;  // uniform in [0, 50 / sigma]
  double sigmas[3] = {1e-4, 1.0, 2.0};
  oracle::OracleSettings oracle;
};

/// max |F~_closed(k) − F~_numeric(k)| over all shapes, sigmas and k.
TransformCheck check_transforms(const TransformCheckOptions& options = {});

struct NormalizationCheck {
  double max_abs_dev = 0.0;
  Shape shape = Shape::Gaussian;
  double sigma = 0.0;
};

/// max |∫F − 1| over all shapes and the option sigmas.
NormalizationCheck check_normalization(const TransformCheckOptions& options = {});

std::string describe(const KernelCheck& c);
std::string describe(const TransformCheck& c);
std::string describe(const NormalizationCheck& c);

}  // namespace qline::verify
