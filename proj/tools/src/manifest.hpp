#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace chebzero::cli {

inline constexpr const char* kToolVersion = "0.3.0";

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Digest of the canonical (key-sorted, compact) serialization of a config.
std::string config_hash(const nlohmann::json& config);

/// Output directory plus the record of every file written into it.
class RunContext {
 public:
  RunContext(std::filesystem::path out_dir, std::string command, nlohmann::json config);

  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }
  const nlohmann::json& config() const noexcept { return config_; }

  /// Writes `content` to out_dir/name. `name` must be a plain file name;
  /// anything with a directory part is rejected.
  void write(const std::string& name, const std::string& content);

  void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }

  /// Writes manifest.json: tool version, command, config hash, seed,
  /// timestamps and the hashed output list.
  void finish(int exit_code);

 private:
  std::filesystem::path out_dir_;
  std::string command_;
  nlohmann::json config_;
  std::string started_;
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
  std::vector<nlohmann::json> outputs_;
};

}  // namespace chebzero::cli
