#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "repoprint/core/country.hpp"
#include "repoprint/core/event.hpp"

namespace repoprint {

/// A curated repository.
///
/// Build through `from_events`, which orders the events (stable on equal
/// timestamps) and derives the contributor and watcher sets. The metadata
/// counts are filled later from the sidecar file or event-derived fallbacks.
struct RepoRecord {
  std::string repo_id;
  std::vector<Event> events;
  std::set<std::string> contributors;  // actors of non-Watch events
  std::set<std::string> watchers;      // actors of Watch events
  std::optional<CountryLabel> country;
  std::uint64_t stars = 0;
  std::uint64_t forks = 0;
  std::uint64_t open_issues = 0;
  std::string description;
  std::vector<std::string> commit_comments;

  static RepoRecord from_events(std::string repo_id, std::vector<Event> events);

  std::size_t event_count() const noexcept { return events.size(); }

  /// Events excluding Watch; the "development activity" count.
  std::size_t activity_count() const noexcept;

  friend bool operator==(const RepoRecord&, const RepoRecord&) = default;
};

}  // namespace repoprint
