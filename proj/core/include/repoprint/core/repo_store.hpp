#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "repoprint/core/repo_record.hpp"

namespace repoprint {

/// `repos.bin`: the curated-corpus intermediate between ingest and the
/// feature stages.
///
///   "RPRB" | u32 version | u64 record count |
///   per record: u64 byte length | record bytes
///
/// A record stores repo id, country ("" when unassigned), the three metadata
/// counts, the description and the ordered events. Contributor, watcher and
/// comment lists are re-derived on load.
inline constexpr std::uint32_t kRepoStoreVersion = 1;

std::string encode_repos(const std::vector<RepoRecord>& records);

/// Throws Error(ParseError) on bad magic or truncation and
/// Error(VersionMismatch) on a foreign version.
std::vector<RepoRecord> decode_repos(std::string_view bytes);

void save_repos(const std::string& path, const std::vector<RepoRecord>& records);
std::vector<RepoRecord> load_repos(const std::string& path);

}  // namespace repoprint
