#include "qline/cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <memory>
#include <stdexcept>

namespace qline::cli {

std::string tool_version() { return QLINE_VERSION; }

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

nlohmann::json to_json(const Parameters& p) {
  return {
      {"process", to_string(p.qubit.process)},
      {"omega", p.qubit.omega},
      {"lambda", p.qubit.lambda},
      {"shape", to_string(p.smearing.shape)},
      {"sigma", p.smearing.sigma},
      {"cutoff", to_string(p.cutoff.model)},
      {"eps", p.cutoff.epsilon},
      {"r", p.switching.ramp},
      {"T", p.switching.plateau},
  };
}

nlohmann::json to_json(const response::QuadratureSettings& s) {
  return {{"rel_tol", s.rel_tol},
          {"abs_tol", s.abs_tol},
          {"max_panels", s.max_panels},
          {"tail_safety", s.tail_safety}};
}

nlohmann::json to_json(const ProbabilityResult& r) {
  return {{"p_over_lambda_sq", r.p_over_lambda_sq},
          {"p", r.p},
          {"abs_error_estimate", r.abs_error_estimate},
          {"panels_used", r.panels_used},
          {"tail_bound", r.tail_bound},
          {"k_max", r.k_max}};
}

ProbabilityResult result_from_json(const nlohmann::json& j) {
  ProbabilityResult r;
  r.p_over_lambda_sq = j.at("p_over_lambda_sq").get<double>();
  r.p = j.at("p").get<double>();
  r.abs_error_estimate = j.at("abs_error_estimate").get<double>();
  r.panels_used = j.at("panels_used").get<std::size_t>();
  r.tail_bound = j.at("tail_bound").get<double>();
  r.k_max = j.at("k_max").get<double>();
  return r;
}

nlohmann::json to_json(const sweep::SweepSpec& spec) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : spec.axes) {
    axes.push_back({{"axis", sweep::to_string(a.axis)},
                    {"min", a.lower},
                    {"max", a.upper},
                    {"points", a.points},
                    {"spacing", sweep::to_string(a.spacing)}});
  }
  nlohmann::json models = nlohmann::json::array();
  if (spec.comparison == sweep::Comparison::Shapes) {
    for (auto s : spec.shapes) models.push_back(to_string(s));
  } else {
    for (auto c : spec.cutoffs) models.push_back(to_string(c));
  }
  return {{"label", spec.label},
          {"fixed", to_json(spec.fixed)},
          {"axes", axes},
          {"compare", sweep::to_string(spec.comparison)},
          {"models", models}};
}

std::string content_hash(const nlohmann::json& inputs) { return sha256_hex(inputs.dump()); }

RunManifest RunManifest::create(std::string command, nlohmann::json inputs) {
  RunManifest m;
  m.command = std::move(command);
  m.inputs = std::move(inputs);
  m.input_hash = content_hash({{"version", m.version}, {"inputs", m.inputs}});
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = buf;
  return m;
}

nlohmann::json RunManifest::to_json() const {
  return {{"command", command},
          {"inputs", inputs},
          {"version", version},
          {"timestamp", timestamp},
          {"input_hash", input_hash}};
}

}  // namespace qline::cli
