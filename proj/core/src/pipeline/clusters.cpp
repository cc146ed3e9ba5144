#include "repoprint/pipeline/clusters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "repoprint/core/error.hpp"

namespace repoprint::pipeline {

std::string_view cluster_name(Cluster c) {
  switch (c) {
    case Cluster::Small: return "Small";
    case Cluster::Medium: return "Medium";
    case Cluster::MediumLarge: return "MediumLarge";
    case Cluster::Large: return "Large";
  }
  return "?";
}

CutPoints parse_cuts(std::string_view text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto part = text.substr(pos, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - pos);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      fail(Errc::InvalidConfig, "bad cut list '" + std::string(text) + "'");
    }
    v.push_back(x);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 3) fail(Errc::InvalidConfig, "expected three cut points");
  CutPoints c{v[0], v[1], v[2]};
  if (!(c.q25 <= c.q50 && c.q50 <= c.q75)) {
    fail(Errc::InvalidConfig, "cut points must be non-decreasing");
  }
  return c;
}

std::string format_cuts(const CutPoints& c) {
  auto fmt = [](double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
  };
  return fmt(c.q25) + "," + fmt(c.q50) + "," + fmt(c.q75);
}

double nearest_rank_percentile(std::span<const std::size_t> values, double p) {
  if (values.empty()) fail(Errc::TooFewRepos, "percentile of an empty set");
  std::vector<std::size_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return static_cast<double>(sorted[rank - 1]);
}

std::vector<std::size_t> ClusterAssignment::members(Cluster c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == c) out.push_back(i);
  }
  return out;
}

std::size_t ClusterAssignment::size_of(Cluster c) const {
  return static_cast<std::size_t>(std::count(assignment.begin(), assignment.end(), c));
}

Cluster cluster_for(std::size_t activity, const CutPoints& cuts) {
  const auto a = static_cast<double>(activity);
  if (a < cuts.q25) return Cluster::Small;
  if (a < cuts.q50) return Cluster::Medium;
  if (a < cuts.q75) return Cluster::MediumLarge;
  return Cluster::Large;
}

ClusterAssignment quartile_clusters(std::span<const std::size_t> activity_counts,
                                    std::optional<CutPoints> cuts) {
  if (activity_counts.size() < kClusterCount) {
    fail(Errc::TooFewRepos, "clustering needs at least 4 repositories, got " +
                                std::to_string(activity_counts.size()));
  }
  ClusterAssignment a;
  if (cuts) {
    if (!(cuts->q25 <= cuts->q50 && cuts->q50 <= cuts->q75)) {
      fail(Errc::InvalidConfig, "cut points must be non-decreasing");
    }
    a.cuts = *cuts;
  } else {
    a.cuts = {nearest_rank_percentile(activity_counts, 25.0),
              nearest_rank_percentile(activity_counts, 50.0),
              nearest_rank_percentile(activity_counts, 75.0)};
  }
  a.assignment.reserve(activity_counts.size());
  for (auto c : activity_counts) a.assignment.push_back(cluster_for(c, a.cuts));
  return a;
}

ClusterAssignment quartile_clusters(std::span<const RepoRecord> records,
                                    std::optional<CutPoints> cuts) {
  std::vector<std::size_t> counts;
  counts.reserve(records.size());
  for (const auto& r : records) counts.push_back(r.activity_count());
  return quartile_clusters(counts, cuts);
}

}  // namespace repoprint::pipeline
