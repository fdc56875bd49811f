#pragma once

// Panel-based adaptive Gauss-Kronrod (10/21) quadrature on finite intervals.
//
// Panels are seeded between caller-supplied breakpoints, never wider than a
// caller-supplied cap, then refined by bisecting the panel with the largest
// error estimate. The reported sum is always taken in panel-position order so
// the result depends only on the inputs, never on refinement history.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qline::quad {

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// One Gauss-Kronrod 21-point evaluation on [a, b] with the QUADPACK error
/// heuristic.
PanelEstimate gauss_kronrod21(const std::function<double(double)>& f, double a, double b);

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

class PanelLimitExceeded : public std::runtime_error {
 public:
  PanelLimitExceeded(double estimate, double error)
      : std::runtime_error("max panels exceeded"), estimate_(estimate), error_(error) {}
  [[nodiscard]] double estimate() const noexcept { return estimate_; }
  [[nodiscard]] double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

class AdaptiveIntegrator {
 public:
  explicit AdaptiveIntegrator(std::function<double(double)> f) : f_(std::move(f)) {}

  /// Seeds panels covering [a, b], split at the sorted `breaks` that fall
  /// inside and capped at `max_width` (<= 0 disables the cap).
  void add_interval(double a, double b, std::span<const double> breaks, double max_width);

  /// Bisects the worst panel until the total error is within
  /// max(rel_tol·|total|, abs_tol). Throws PanelLimitExceeded when more than
  /// `max_panels` panels would be needed.
  void refine(double rel_tol, double abs_tol, std::size_t max_panels);

  [[nodiscard]] double value() const;
  [[nodiscard]] double error() const;
  [[nodiscard]] std::size_t panel_count() const noexcept { return panels_.size(); }
  [[nodiscard]] const std::vector<Panel>& panels() const noexcept { return panels_; }

 private:
  void push(double a, double b);

  std::function<double(double)> f_;
  std::vector<Panel> panels_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// in the requested precision.
template <typename Real>
struct GaussLegendre {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

GaussLegendre<double> gauss_legendre(std::size_t n);
GaussLegendre<__float128> gauss_legendre_quad(std::size_t n);

}  // namespace qline::quad
