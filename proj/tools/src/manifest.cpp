#include "manifest.hpp"

#include <zlib.h>

#include <cstdio>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/version.hpp"

namespace repoprint::cli {

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::config(const std::string& key, nlohmann::json value) {
  config_[key] = std::move(value);
}

void RunManifest::seed(std::uint64_t s) { seeds_.push_back(s); }

void RunManifest::input(const std::string& path) {
  const std::string bytes = read_file(path);
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32_z(crc, reinterpret_cast<const Bytef*>(bytes.data()), bytes.size());
  char hex[16];
  std::snprintf(hex, sizeof hex, "%08lx", static_cast<unsigned long>(crc));
  inputs_.push_back({{"path", path}, {"bytes", bytes.size()}, {"crc32", hex}});
}

void RunManifest::output(const std::string& path) { outputs_.push_back(path); }

std::string RunManifest::key() const {
  nlohmann::json k;
  k["tool_version"] = kVersion;
  k["command"] = command_;
  k["config"] = config_;
  k["inputs"] = inputs_;
  k["seeds"] = seeds_;
  return k.dump();
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["tool_version"] = kVersion;
  j["config"] = config_;
  j["inputs"] = inputs_;
  j["seeds"] = seeds_;
  j["outputs"] = outputs_;
  const auto elapsed = std::chrono::steady_clock::now() - start_;
  j["wall_time_seconds"] = std::chrono::duration<double>(elapsed).count();
  return j;
}

void RunManifest::write(const std::string& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

}  // namespace repoprint::cli
