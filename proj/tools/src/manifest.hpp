#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace repoprint::cli {

/// Provenance record written next to every command's outputs. The
/// reproducibility key is (tool_version, config, inputs, seeds); wall time is
/// informational.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void config(const std::string& key, nlohmann::json value);
  void seed(std::uint64_t s);
  /// Records size and CRC-32 of the file's bytes.
  void input(const std::string& path);
  void output(const std::string& path);

  nlohmann::json to_json() const;
  /// Canonical JSON of the reproducibility key only.
  std::string key() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  nlohmann::json config_ = nlohmann::json::object();
  std::vector<std::uint64_t> seeds_;
  nlohmann::json inputs_ = nlohmann::json::array();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace repoprint::cli
