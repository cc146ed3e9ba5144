#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/core/country.hpp"
#include "repoprint/core/repo_record.hpp"
#include "repoprint/features/text.hpp"

namespace repoprint::pipeline {

struct StatRow {
  std::string metric;
  std::string group_a;
  std::string group_b;
  double value = 0.0;
  double p_value = 0.0;  // NaN when not applicable
};

/// Event-type KL divergences in both directions (with and without Watch) and
/// z-tests on each per-repo profile scalar between two countries.
/// Throws Error(InsufficientSamples) when a group has fewer than 2 repos.
std::vector<StatRow> compare_countries(std::span<const RepoRecord> records,
                                       const CountryLabel& a,
                                       const CountryLabel& b,
                                       const features::TextTranslator& translator);

/// CSV `metric,group_a,group_b,value,p_value`.
std::string format_stats(std::span<const StatRow> rows);

}  // namespace repoprint::pipeline
