#include "repoprint/features/profile.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "repoprint/core/error.hpp"

namespace repoprint::features {
namespace {

std::size_t utf8_length(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

double median_interarrival_days(std::span<const Event> events) {
  if (events.size() < 2) {
    fail(Errc::TooFewEvents, "inter-arrival time needs at least two events");
  }
  std::vector<UnixSeconds> gaps;
  gaps.reserve(events.size() - 1);
  for (std::size_t i = 1; i < events.size(); ++i) {
    gaps.push_back(events[i].timestamp - events[i - 1].timestamp);
  }
  const std::size_t mid = gaps.size() / 2;
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(mid),
                   gaps.end());
  double median = static_cast<double>(gaps[mid]);
  if (gaps.size() % 2 == 0) {
    const auto lower = *std::max_element(
        gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(mid));
    median = (median + static_cast<double>(lower)) / 2.0;
  }
  return median / static_cast<double>(kSecondsPerDay);
}

std::size_t leader_count(std::span<const Event> events) {
  std::set<std::string_view> leaders;
  for (const Event& e : events) {
    if (e.type == EventType::Push || e.type == EventType::PullRequest) {
      leaders.insert(e.actor);
    }
  }
  return leaders.size();
}

double watcher_contributor_jaccard(const RepoRecord& record) {
  const auto& w = record.watchers;
  const auto& c = record.contributors;
  if (w.empty() && c.empty()) {
    fail(Errc::BothSetsEmpty,
         "repo '" + record.repo_id + "' has neither watchers nor contributors");
  }
  std::size_t shared = 0;
  for (const auto& a : w) shared += c.count(a);
  const std::size_t uni = w.size() + c.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(uni);
}

double mean_commit_comment_length(const RepoRecord& record,
                                  const TextTranslator& translator) {
  if (record.commit_comments.empty()) return 0.0;
  double total = 0.0;
  for (const auto& comment : record.commit_comments) {
    total += static_cast<double>(
        utf8_length(normalize_whitespace(translator(comment))));
  }
  return total / static_cast<double>(record.commit_comments.size());
}

ProfileFeatures profile_features(const RepoRecord& record,
                                 const TextTranslator& translator) {
  ProfileFeatures p;
  p.stars = static_cast<double>(record.stars);
  p.forks = static_cast<double>(record.forks);
  p.open_issues = static_cast<double>(record.open_issues);
  p.comment_len = mean_commit_comment_length(record, translator);
  p.iat_days = median_interarrival_days(record.events);
  p.leaders = static_cast<double>(leader_count(record.events));
  p.jaccard = watcher_contributor_jaccard(record);
  return p;
}

}  // namespace repoprint::features
