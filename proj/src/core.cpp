#include "qline/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace qline {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ValidationError(message);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Bundle validate(const QubitConfig& config, const SmearingSpec& smearing, const CutoffSpec& cutoff,
                const SwitchingProfile& switching) {
  // NaN fails every comparison, so each check is written as "ok when".
  require(std::isfinite(config.omega) && config.omega > 0.0, "omega must be positive");
  require(std::isfinite(config.lambda) && config.lambda >= 0.0, "lambda must be non-negative");
  require(std::isfinite(smearing.sigma) && smearing.sigma > 0.0, "sigma must be positive");
  require(std::isfinite(cutoff.epsilon) && cutoff.epsilon > 0.0, "epsilon must be positive");
  require(std::isfinite(switching.ramp) && switching.ramp > 0.0, "ramp must be positive");
  require(std::isfinite(switching.plateau) && switching.plateau >= 0.0,
          "plateau must be non-negative");
  return Bundle(Parameters{config, smearing, cutoff, switching});
}

Parameters default_parameters() {
  Parameters p;
  p.qubit = {ScaleDefaults::omega0, 1.0, Process::Excitation};
  p.smearing = {Shape::Gaussian, ScaleDefaults::sigma0};
  p.cutoff = {CutoffModel::Exponential, ScaleDefaults::epsilon0};
  p.switching = {ScaleDefaults::r0, ScaleDefaults::t0};
  return p;
}

std::string_view to_string(Process p) {
  return p == Process::Excitation ? "excitation" : "emission";
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::Gaussian: return "gaussian";
    case Shape::Lorentzian: return "lorentzian";
    case Shape::Quartic: return "quartic";
    case Shape::Sharp: return "sharp";
  }
  return "?";
}

std::string_view to_string(CutoffModel m) {
  switch (m) {
    case CutoffModel::Gaussian: return "gaussian";
    case CutoffModel::Lorentzian: return "lorentzian";
    case CutoffModel::Exponential: return "exponential";
    case CutoffModel::Sharp: return "sharp";
  }
  return "?";
}

char tag(Shape s) {
  switch (s) {
    case Shape::Gaussian: return 'G';
    case Shape::Lorentzian: return 'L';
    case Shape::Quartic: return 'Q';
    case Shape::Sharp: return 'S';
  }
  return '?';
}

char tag(CutoffModel m) {
  switch (m) {
    case CutoffModel::Gaussian: return 'G';
    case CutoffModel::Lorentzian: return 'L';
    case CutoffModel::Exponential: return 'E';
    case CutoffModel::Sharp: return 'S';
  }
  return '?';
}

Process parse_process(std::string_view name) {
  const auto n = lowercase(name);
  if (n == "excitation") return Process::Excitation;
  if (n == "emission") return Process::Emission;
  throw ValidationError("unknown process '" + std::string(name) + "'");
}

Shape parse_shape(std::string_view name) {
  const auto n = lowercase(name);
  if (n == "gaussian" || n == "g") return Shape::Gaussian;
  if (n == "lorentzian" || n == "l") return Shape::Lorentzian;
  if (n == "quartic" || n == "q") return Shape::Quartic;
  if (n == "sharp" || n == "s") return Shape::Sharp;
  throw ValidationError("unknown shape '" + std::string(name) + "'");
}

CutoffModel parse_cutoff(std::string_view name) {
  const auto n = lowercase(name);
  if (n == "gaussian" || n == "g") return CutoffModel::Gaussian;
  if (n == "lorentzian" || n == "l") return CutoffModel::Lorentzian;
  if (n == "exponential" || n == "e") return CutoffModel::Exponential;
  if (n == "sharp" || n == "s") return CutoffModel::Sharp;
  throw ValidationError("unknown cutoff model '" + std::string(name) + "'");
}

}  // namespace qline
