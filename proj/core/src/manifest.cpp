#include "ordlab/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ordlab/errors.hpp"

#ifndef ORDLAB_VERSION
#define ORDLAB_VERSION "0.0.0"
#endif

namespace ordlab {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string tool_version() { return ORDLAB_VERSION; }

RunManifest make_manifest(const std::string& command_line,
                          std::string_view config_blob, std::uint64_t seed) {
  RunManifest m;
  m.command_line = command_line;
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_blob)));
  m.config_hash = hex;
  m.seed = seed;
  m.tool_version = tool_version();
  m.timestamp = iso8601_utc_now();
  return m;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["command_line"] = m.command_line;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& file, const RunManifest& m) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + file);
  out << manifest_json(m);
  if (!out) throw IoError("write failed: " + file);
}

}  // namespace ordlab
