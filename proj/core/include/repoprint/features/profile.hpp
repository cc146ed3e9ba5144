#pragma once

#include <array>
#include <span>

#include "repoprint/core/repo_record.hpp"
#include "repoprint/features/text.hpp"

namespace repoprint::features {

struct ProfileFeatures {
  double stars = 0.0;
  double forks = 0.0;
  double open_issues = 0.0;
  double comment_len = 0.0;  // mean characters per commit comment
  double iat_days = 0.0;     // median inter-arrival time
  double leaders = 0.0;      // distinct Push/PullRequest actors
  double jaccard = 0.0;      // watchers vs contributors
  std::array<double, 2> topic{0.5, 0.5};
};

/// Median gap between consecutive events, in days. Events must already be in
/// time order. Throws Error(TooFewEvents) for fewer than two events.
double median_interarrival_days(std::span<const Event> events);

/// Distinct actors with at least one Push or PullRequest event.
std::size_t leader_count(std::span<const Event> events);

/// |W ∩ C| / |W ∪ C|. Throws Error(BothSetsEmpty).
double watcher_contributor_jaccard(const RepoRecord& record);

/// Mean UTF-8 code-point count of translated, whitespace-normalized commit
/// comments; 0 when the repo has none.
double mean_commit_comment_length(const RepoRecord& record,
                                  const TextTranslator& translator);

/// All scalar profile features; `topic` is left at its uniform default for
/// the caller to fill from an LDA model.
ProfileFeatures profile_features(const RepoRecord& record,
                                 const TextTranslator& translator);

}  // namespace repoprint::features
