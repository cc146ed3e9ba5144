#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "repoprint/core/repo_record.hpp"

namespace repoprint::features {

struct RepoMetadata {
  std::uint64_t stars = 0;
  std::uint64_t forks = 0;
  std::uint64_t open_issues = 0;
  std::string description;
};

/// Sidecar CSV: `repo_id,stars,forks,open_issues,description`.
using MetadataSidecar = std::map<std::string, RepoMetadata, std::less<>>;

MetadataSidecar parse_metadata(std::string_view csv_text);
MetadataSidecar load_metadata(const std::string& path);
std::string format_metadata(const MetadataSidecar& sidecar);

struct MetadataReport {
  std::size_t from_sidecar = 0;
  /// Repos absent from the sidecar: stars and forks fall back to their Watch
  /// and Fork event counts, open issues to 0, description to the Create
  /// payload.
  std::size_t derived = 0;
};

MetadataReport apply_metadata(std::vector<RepoRecord>& records,
                              const MetadataSidecar* sidecar);

}  // namespace repoprint::features
