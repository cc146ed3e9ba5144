#include "repoprint/ingest/curation.hpp"

#include <algorithm>

#include "repoprint/core/error.hpp"

namespace repoprint::ingest {

void CurationConfig::validate() const {
  if (!(majority_threshold > 0.0 && majority_threshold < 1.0)) {
    fail(Errc::InvalidConfig, "majority_threshold must lie in (0, 1)");
  }
  if (min_events < 1) fail(Errc::InvalidConfig, "min_events must be >= 1");
  if (window.start >= window.end) {
    fail(Errc::InvalidConfig, "window start must precede window end");
  }
}

std::vector<RepoRecord> curate(std::span<const Event> events,
                               const CurationConfig& cfg,
                               CurationReport* report) {
  cfg.validate();
  CurationReport local;
  std::map<std::string, std::vector<Event>> by_repo;
  for (const Event& e : events) {
    if (!cfg.window.contains(e.timestamp)) {
      ++local.events_outside_window;
      continue;
    }
    by_repo[e.repo].push_back(e);
  }
  local.repos_seen = by_repo.size();

  std::vector<RepoRecord> out;
  for (auto& [repo, list] : by_repo) {
    if (list.size() < cfg.min_events) {
      ++local.dropped_too_few_events;
      continue;
    }
    if (cfg.require_create &&
        std::none_of(list.begin(), list.end(), [](const Event& e) {
          return e.type == EventType::Create;
        })) {
      ++local.dropped_no_create;
      continue;
    }
    out.push_back(RepoRecord::from_events(repo, std::move(list)));
  }
  local.repos_kept = out.size();
  if (report) *report = local;
  return out;
}

std::optional<CountryLabel> assign_repo_country(const RepoRecord& record,
                                                const UserCountries& users,
                                                const CurationConfig& cfg) {
  if (record.contributors.empty()) {
    fail(Errc::EmptyContributorSet,
         "repo '" + record.repo_id + "' has no contributors");
  }
  std::map<CountryLabel, std::size_t> counts;
  for (const auto& actor : record.contributors) {
    auto it = users.find(actor);
    if (it != users.end() && it->second) ++counts[*it->second];
  }
  const double denom = static_cast<double>(record.contributors.size());
  for (const auto& [label, n] : counts) {
    if (static_cast<double>(n) / denom > cfg.majority_threshold) return label;
  }
  return std::nullopt;
}

}  // namespace repoprint::ingest
