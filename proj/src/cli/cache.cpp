#include "qline/cli/cache.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qline/cli/manifest.hpp"

namespace qline::cli {

namespace fs = std::filesystem;

std::optional<fs::path> resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return fs::path(flag_value);
  if (const char* env = std::getenv(cache_env_var); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return std::nullopt;
}

ProbabilityCache::ProbabilityCache(fs::path dir, std::ostream* warnings)
    : dir_(std::move(dir)), warnings_(warnings) {
  fs::create_directories(dir_);
}

namespace {

nlohmann::json key_inputs(const Bundle& bundle, const response::QuadratureSettings& settings) {
  return {{"params", to_json(bundle.parameters())},
          {"settings", to_json(settings)},
          {"version", tool_version()}};
}

}  // namespace

std::string ProbabilityCache::key(const Bundle& bundle,
                                  const response::QuadratureSettings& settings) const {
  return content_hash(key_inputs(bundle, settings));
}

std::optional<ProbabilityResult> ProbabilityCache::lookup(
    const Bundle& bundle, const response::QuadratureSettings& settings) {
  const std::string k = key(bundle, settings);
  const fs::path file = dir_ / (k + ".json");
  std::ifstream in(file);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("key").get<std::string>() != k) throw std::runtime_error("key mismatch");
    auto result = result_from_json(j.at("result"));
    ++hits_;
    return result;
  } catch (const std::exception& e) {
    if (warnings_ != nullptr) {
      *warnings_ << "warning: ignoring corrupt cache entry " << file.string() << ": " << e.what()
                 << '\n';
    }
    ++misses_;
    return std::nullopt;
  }
}

void ProbabilityCache::store(const Bundle& bundle, const response::QuadratureSettings& settings,
                             const ProbabilityResult& result) {
  const std::string k = key(bundle, settings);
  const nlohmann::json entry = {
      {"key", k}, {"inputs", key_inputs(bundle, settings)}, {"result", to_json(result)}};
  std::ostringstream name;
  name << '.' << k << '.' << ::getpid() << '.' << temp_counter_++ << ".tmp";
  const fs::path tmp = dir_ / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << entry.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, dir_ / (k + ".json"));
}

}  // namespace qline::cli
