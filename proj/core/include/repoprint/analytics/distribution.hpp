#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/core/repo_record.hpp"

namespace repoprint::analytics {

/// Categorical distribution over a labelled, ordered support.
struct ProbDist {
  std::vector<std::string> support;
  std::vector<double> probs;

  /// Normalizes non-negative counts. Throws Error(EmptyEventPool) when the
  /// counts sum to zero.
  static ProbDist from_counts(std::vector<std::string> support,
                              std::span<const double> counts);

  double prob(std::string_view category) const;
};

/// Pooled event-type distribution across `records`. The support always lists
/// every type (Watch omitted when `include_watch` is false) in index order,
/// so distributions from different corpora are directly comparable.
/// Throws Error(EmptyEventPool).
ProbDist event_type_distribution(std::span<const RepoRecord> records,
                                 bool include_watch);

/// Additive smoothing applied to every cell before renormalizing.
inline constexpr double kKlSmoothing = 1e-10;

/// KL(p || q) in nats after smoothing both sides. Throws
/// Error(SupportMismatch) when supports differ.
double kl_divergence(const ProbDist& p, const ProbDist& q);

/// Same computation on raw probability vectors of equal length.
double kl_divergence(std::span<const double> p, std::span<const double> q);

}  // namespace repoprint::analytics
