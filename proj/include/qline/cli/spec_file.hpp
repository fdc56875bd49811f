#pragma once

// INI-style sweep description:
//
//   [sweep]            label = fig2c              (optional)
//   [fixed]            process, omega, lambda, shape, sigma, cutoff, eps, r, T
//   [axis.<name>]      min, max, points, spacing  (name: sigma | eps | r | T)
//   [models]           compare = shapes | cutoffs, set = comma-separated names
//   [output]           path, continue_on_error, threads
//
// Unknown sections or keys are errors. Omitted [fixed] keys take the model
// defaults. Axes appear in file order.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qline/sweep.hpp"

namespace qline::cli {

class SpecFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepFile {
  sweep::SweepSpec spec;
  std::string output_path;  // empty means stdout
};

/// Throws SpecFileError on syntax or schema problems and ValidationError on
/// out-of-domain values.
SweepFile parse_spec(std::istream& in);
SweepFile read_spec_file(const std::string& path);

/// Inverse of parse_spec; numbers are written with round-trip precision.
void write_spec(std::ostream& out, const SweepFile& file);

}  // namespace qline::cli
