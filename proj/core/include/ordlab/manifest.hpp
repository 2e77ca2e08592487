#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ordlab {

// Reproducibility sidecar emitted alongside every output file: identical
// manifests (timestamp aside) imply identical outputs.
struct RunManifest {
  std::string command_line;
  std::string config_hash;  // fnv1a-64 hex of the normalized inputs
  std::uint64_t seed = 0;
  std::string tool_version;  // semver
  std::string timestamp;     // ISO-8601 UTC
};

std::uint64_t fnv1a64(std::string_view data);
std::string iso8601_utc_now();
std::string tool_version();

RunManifest make_manifest(const std::string& command_line,
                          std::string_view config_blob, std::uint64_t seed);

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::string& file, const RunManifest& m);

}  // namespace ordlab
