#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repoprint/core/repo_record.hpp"

namespace repoprint::pipeline {

enum class Cluster : std::uint8_t { Small = 0, Medium = 1, MediumLarge = 2, Large = 3 };

inline constexpr std::size_t kClusterCount = 4;
inline constexpr std::array<Cluster, kClusterCount> kAllClusters = {
    Cluster::Small, Cluster::Medium, Cluster::MediumLarge, Cluster::Large};

std::string_view cluster_name(Cluster c);

/// Activity-count cut points (Watch events excluded).
struct CutPoints {
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;

  friend bool operator==(const CutPoints&, const CutPoints&) = default;
};

/// "60,80,130". Throws Error(InvalidConfig).
CutPoints parse_cuts(std::string_view text);
std::string format_cuts(const CutPoints& c);

/// Nearest-rank percentile of unsorted values: the ceil(p/100 * n)-th
/// smallest. Throws Error(TooFewRepos) for an empty input.
double nearest_rank_percentile(std::span<const std::size_t> values, double p);

struct ClusterAssignment {
  CutPoints cuts;
  std::vector<Cluster> assignment;  // parallel to the input rows

  std::vector<std::size_t> members(Cluster c) const;
  std::size_t size_of(Cluster c) const;
};

Cluster cluster_for(std::size_t activity, const CutPoints& cuts);

/// Cut points from the 25/50/75th nearest-rank percentiles unless `cuts`
/// overrides them. Throws Error(TooFewRepos) for fewer than 4 rows and
/// Error(InvalidConfig) for decreasing overrides.
ClusterAssignment quartile_clusters(std::span<const std::size_t> activity_counts,
                                    std::optional<CutPoints> cuts = std::nullopt);
ClusterAssignment quartile_clusters(std::span<const RepoRecord> records,
                                    std::optional<CutPoints> cuts = std::nullopt);

}  // namespace repoprint::pipeline
