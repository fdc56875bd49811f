#include "qline/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace qline::dataset {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // printf honours LC_NUMERIC, so swap a locale decimal separator back to '.'.
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  std::string s(buf);
  for (auto& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

Metadata describe(const sweep::Dataset& data) {
  const auto& spec = data.spec;
  const auto& p = spec.fixed;
  Metadata meta{
      {"format", "qline-dataset/1"},
      {"label", spec.label},
      {"quantity", "p_a and p_b are P/lambda^2; delta = |p_a - p_b| / max(p_a, p_b)"},
      {"process", std::string(to_string(p.qubit.process))},
      {"comparison", std::string(sweep::to_string(spec.comparison))},
      {"omega", format_number(p.qubit.omega)},
      {"lambda", format_number(p.qubit.lambda)},
      {"shape", std::string(to_string(p.smearing.shape))},
      {"sigma", format_number(p.smearing.sigma)},
      {"cutoff", std::string(to_string(p.cutoff.model))},
      {"eps", format_number(p.cutoff.epsilon)},
      {"r", format_number(p.switching.ramp)},
      {"T", format_number(p.switching.plateau)},
  };
  std::string models;
  if (spec.comparison == sweep::Comparison::Shapes) {
    for (auto s : spec.shapes) models += (models.empty() ? "" : " ") + std::string(to_string(s));
  } else {
    for (auto c : spec.cutoffs) models += (models.empty() ? "" : " ") + std::string(to_string(c));
  }
  meta.emplace_back("models", models);
  for (const auto& axis : spec.axes) {
    meta.emplace_back("axis." + std::string(sweep::to_string(axis.axis)),
                      format_number(axis.lower) + " " + format_number(axis.upper) + " " +
                          std::to_string(axis.points) + " " +
                          std::string(sweep::to_string(axis.spacing)));
  }
  const auto& s = data.settings;
  meta.emplace_back("rel_tol", format_number(s.rel_tol));
  meta.emplace_back("abs_tol", format_number(s.abs_tol));
  meta.emplace_back("max_panels", std::to_string(s.max_panels));
  meta.emplace_back("tail_safety", format_number(s.tail_safety));
  return meta;
}

void write(std::ostream& out, const sweep::Dataset& data, const Metadata& extra) {
  for (const auto& [key, value] : describe(data)) out << "# " << key << ": " << value << '\n';
  for (const auto& [key, value] : extra) out << "# " << key << ": " << value << '\n';
  out << header << '\n';
  for (const auto& row : data.rows) {
    out << format_number(row.sigma) << ',' << format_number(row.epsilon) << ','
        << format_number(row.ramp) << ',' << format_number(row.plateau) << ',' << row.pair << ','
        << format_number(row.p_a) << ',' << format_number(row.p_b) << ','
        << format_number(row.delta) << ',' << format_number(row.err_a) << ','
        << format_number(row.err_b) << ','
        << (row.ok ? (row.both_zero ? "both_zero" : "ok") : "failed") << '\n';
  }
}

std::string to_string(const sweep::Dataset& data, const Metadata& extra) {
  std::ostringstream os;
  write(os, data, extra);
  return os.str();
}

}  // namespace qline::dataset
