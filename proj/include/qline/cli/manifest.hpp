#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qline/core.hpp"
#include "qline/response.hpp"
#include "qline/sweep.hpp"

namespace qline::cli {

std::string tool_version();

std::string sha256_hex(std::string_view data);

nlohmann::json to_json(const Parameters& p);
nlohmann::json to_json(const response::QuadratureSettings& s);
nlohmann::json to_json(const ProbabilityResult& r);
nlohmann::json to_json(const sweep::SweepSpec& spec);
ProbabilityResult result_from_json(const nlohmann::json& j);

/// SHA-256 of the canonical (key-sorted, round-trip precision) JSON dump.
/// Callers pass only physics-relevant inputs, never timestamps.
std::string content_hash(const nlohmann::json& inputs);

struct RunManifest {
  std::string command;
  nlohmann::json inputs;  // resolved parameter bundle(s) and settings
  std::string version = tool_version();
  std::string timestamp;
  std::string input_hash;

  /// Fills version, timestamp (UTC, ISO 8601) and input_hash from `inputs`.
  static RunManifest create(std::string command, nlohmann::json inputs);
  [[nodiscard]] nlohmann::json to_json() const;
};

}  // namespace qline::cli
