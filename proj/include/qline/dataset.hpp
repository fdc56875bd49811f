#pragma once

// Plain-text dataset format for sweep output.
//
//   # key: value            metadata lines (parameters, settings, manifest)
//   sigma,eps,r,T,pair,p_a,p_b,delta,err_a,err_b,status
//   1.0000000000000000e-04,...
//
// Comma separated, '.' decimal point, scientific notation with 17
// significant digits, LF line endings. p_a and p_b are P/lambda².

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qline/sweep.hpp"

namespace qline::dataset {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Locale-independent "%.16e".
std::string format_number(double value);

/// Metadata describing the sweep itself (fixed parameters, axes, settings).
Metadata describe(const sweep::Dataset& data);

void write(std::ostream& out, const sweep::Dataset& data, const Metadata& extra = {});
std::string to_string(const sweep::Dataset& data, const Metadata& extra = {});

inline constexpr const char* header = "sigma,eps,r,T,pair,p_a,p_b,delta,err_a,err_b,status";

}  // namespace qline::dataset
