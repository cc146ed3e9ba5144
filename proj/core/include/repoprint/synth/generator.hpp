#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "repoprint/core/event.hpp"
#include "repoprint/core/time.hpp"
#include "repoprint/features/metadata.hpp"
#include "repoprint/ingest/geocoder.hpp"
#include "repoprint/synth/profile.hpp"

namespace repoprint::synth {

inline constexpr std::size_t kMinRepoEvents = 50;

struct GeneratorConfig {
  std::size_t n_per_group = 500;
  std::uint64_t seed = 1;
  TimeWindow window = default_collection_window();
  unsigned threads = 1;
};

struct SyntheticRepo {
  std::string repo_id;
  std::string country;
  std::vector<Event> events;
  features::RepoMetadata metadata;
};

struct SyntheticCorpus {
  std::vector<SyntheticRepo> repos;
  std::vector<ingest::UserProfile> users;
  /// normalized location -> country code
  std::vector<std::pair<std::string, std::string>> gazetteer;

  std::string events_ndjson() const;
  std::string metadata_csv() const;
  std::string labels_csv() const;
  std::string users_csv() const;
  std::string gazetteer_tsv() const;

  /// Writes events.ndjson, meta.csv, labels.csv, users.csv and gazetteer.tsv.
  void write(const std::string& dir) const;
};

/// Deterministic for a given config; repo i of group g draws from its own
/// seed stream. Throws Error(InvalidProfile) or Error(InvalidConfig).
SyntheticCorpus generate_corpus(std::span<const GroupProfile> profiles,
                                const GeneratorConfig& cfg);

}  // namespace repoprint::synth
