#pragma once

// Conversion between laboratory units and the dimensionless Omega0 units used
// by the math core. Omega0 is 10 GHz. Whether that figure is an angular
// frequency (1e10 rad/s) or an ordinary one (2*pi*1e10 rad/s) is a
// convention choice; both are supported. Lengths go through c.

namespace qline::units {

enum class FrequencyConvention { Angular, Ordinary };

inline constexpr double reference_ghz = 10.0;
inline constexpr double speed_of_light = 299'792'458.0;  // m/s

/// Omega0 as an angular frequency in rad/s.
double omega0_rad_per_s(FrequencyConvention convention);

double frequency_from_ghz(double ghz);          // GHz -> Omega0 units
double frequency_to_ghz(double natural);
double time_from_ns(double ns, FrequencyConvention convention);  // ns -> 1/Omega0
double time_to_ns(double natural, FrequencyConvention convention);
double length_from_um(double um, FrequencyConvention convention);  // µm -> c/Omega0
double length_to_um(double natural, FrequencyConvention convention);

}  // namespace qline::units
