#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repoprint/core/country.hpp"
#include "repoprint/core/repo_record.hpp"
#include "repoprint/core/time.hpp"

namespace repoprint::ingest {

struct CurationConfig {
  std::size_t min_events = 50;
  bool require_create = true;
  /// A country wins a repo when its contributor share is strictly greater.
  double majority_threshold = 0.5;
  TimeWindow window = default_collection_window();

  /// Throws Error(InvalidConfig).
  void validate() const;
};

struct CurationReport {
  std::size_t repos_seen = 0;
  std::size_t repos_kept = 0;
  std::size_t dropped_too_few_events = 0;
  std::size_t dropped_no_create = 0;
  std::size_t events_outside_window = 0;
};

/// Groups events by repository and keeps repos with at least
/// `cfg.min_events` in-window events and, when required, an in-window Create.
/// Out-of-window events are discarded before counting. Output is ordered by
/// repo_id; events inside a record keep input order on timestamp ties.
std::vector<RepoRecord> curate(std::span<const Event> events,
                               const CurationConfig& cfg,
                               CurationReport* report = nullptr);

using UserCountries = std::map<std::string, std::optional<CountryLabel>>;

/// Majority country over ALL contributors: unresolved or unknown actors stay
/// in the denominator. Throws Error(EmptyContributorSet).
std::optional<CountryLabel> assign_repo_country(const RepoRecord& record,
                                                const UserCountries& users,
                                                const CurationConfig& cfg);

}  // namespace repoprint::ingest
