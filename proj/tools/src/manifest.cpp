#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "chebzero/error.hpp"

namespace chebzero::cli {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const nlohmann::json& config) { return fnv1a_hex(config.dump()); }

RunContext::RunContext(std::filesystem::path out_dir, std::string command, nlohmann::json config)
    : out_dir_(std::move(out_dir)), command_(std::move(command)), config_(std::move(config)),
      started_(utc_now()) {
  std::filesystem::create_directories(out_dir_);
}

void RunContext::write(const std::string& name, const std::string& content) {
  const std::filesystem::path p(name);
  require(!name.empty() && p.filename() == p && name != "." && name != "..",
          "output name '" + name + "' must be a plain file name");
  std::ofstream out(out_dir_ / p, std::ios::binary);
  if (!out) fail(ErrorKind::kMissingArtifact, "cannot write " + (out_dir_ / p).string());
  out << content;
  outputs_.push_back({{"file", name}, {"bytes", content.size()}, {"fnv1a", fnv1a_hex(content)}});
}

void RunContext::finish(int exit_code) {
  nlohmann::json m{{"tool", "chebzero"},
                   {"version", kToolVersion},
                   {"command", command_},
                   {"config_hash", config_hash(config_)},
                   {"exit_code", exit_code},
                   {"started", started_},
                   {"finished", utc_now()},
                   {"outputs", outputs_}};
  m["seed"] = has_seed_ ? nlohmann::json(seed_) : nlohmann::json(nullptr);
  std::ofstream out(out_dir_ / "manifest.json", std::ios::binary);
  out << m.dump(2) << '\n';
}

}  // namespace chebzero::cli
