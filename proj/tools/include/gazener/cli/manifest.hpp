#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gazener::cli {

std::string sha256_hex(std::string_view bytes);

struct InputDigest {
  std::string path;
  std::string sha256;
  std::size_t bytes = 0;
};

// Reads input files whole, so the digest covers exactly the bytes parsed.
class InputReader {
 public:
  std::string read(const std::filesystem::path& path);
  std::istringstream open(const std::filesystem::path& path) { return std::istringstream(read(path)); }
  const std::vector<InputDigest>& digests() const noexcept { return digests_; }

 private:
  std::vector<InputDigest> digests_;
};

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<InputDigest> inputs;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;

  std::string to_json() const;
};

std::string tool_version();

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace gazener::cli
