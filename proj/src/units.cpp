#include "qline/units.hpp"

#include <numbers>

namespace qline::units {

double omega0_rad_per_s(FrequencyConvention convention) {
  const double hz = reference_ghz * 1e9;
  return convention == FrequencyConvention::Angular ? hz : 2.0 * std::numbers::pi * hz;
}

// Frequencies are quoted in GHz under either convention, so the ratio to the
// 10 GHz reference does not depend on it.
double frequency_from_ghz(double ghz) { return ghz / reference_ghz; }
double frequency_to_ghz(double natural) { return natural * reference_ghz; }

double time_from_ns(double ns, FrequencyConvention convention) {
  return ns * 1e-9 * omega0_rad_per_s(convention);
}

double time_to_ns(double natural, FrequencyConvention convention) {
  return natural / omega0_rad_per_s(convention) * 1e9;
}

double length_from_um(double um, FrequencyConvention convention) {
  return um * 1e-6 * omega0_rad_per_s(convention) / speed_of_light;
}

double length_to_um(double natural, FrequencyConvention convention) {
  return natural * speed_of_light / omega0_rad_per_s(convention) * 1e6;
}

}  // namespace qline::units
