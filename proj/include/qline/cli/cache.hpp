#pragma once

// Content-addressed on-disk cache of probability results.
//
// Entries live at <dir>/<sha256>.json where the hash covers the full
// parameter set, the quadrature settings and the tool version. Each entry
// repeats its key so a damaged or colliding file is detected and ignored.

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qline/core.hpp"
#include "qline/response.hpp"

namespace qline::cli {

inline constexpr const char* cache_env_var = "QLINE_CACHE_DIR";

/// Flag value if given, else $QLINE_CACHE_DIR, else nothing.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag_value);

class ProbabilityCache {
 public:
  /// Creates `dir` if needed. Warnings (corrupt entries) go to `warnings`.
  ProbabilityCache(std::filesystem::path dir, std::ostream* warnings = nullptr);

  [[nodiscard]] std::string key(const Bundle& bundle,
                                const response::QuadratureSettings& settings) const;

  std::optional<ProbabilityResult> lookup(const Bundle& bundle,
                                          const response::QuadratureSettings& settings);

  /// Atomic: written to a unique temporary file, then renamed into place.
  void store(const Bundle& bundle, const response::QuadratureSettings& settings,
             const ProbabilityResult& result);

  [[nodiscard]] std::size_t hits() const noexcept { return hits_; }
  [[nodiscard]] std::size_t misses() const noexcept { return misses_; }
  [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::ostream* warnings_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
  std::atomic<std::size_t> temp_counter_{0};
};

}  // namespace qline::cli
