#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repoprint/learn/logreg.hpp"
#include "repoprint/learn/metrics.hpp"
#include "repoprint/pipeline/clusters.hpp"
#include "repoprint/pipeline/dataset.hpp"

namespace repoprint::pipeline {

struct SplitConfig {
  std::size_t seeds = 5;
  std::uint64_t base_seed = 1;
  double test_fraction = 0.2;
  learn::LogRegConfig logreg;
  std::string positive_label = "US";
  unsigned threads = 1;

  /// Split seed used for repeat `i`; shared by every group and ablation.
  std::uint64_t seed_for(std::size_t i) const;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per class, a seeded shuffle sends round(test_fraction * n_c) members
/// (at least 1, at most n_c - 1) to the test side. Indices refer to `rows`
/// positions mapped back to dataset rows. Throws Error(ClusterTooSmall) when
/// fewer than two classes are present or a class has fewer than 2 members.
Split stratified_split(std::span<const std::string> labels,
                       std::span<const std::size_t> rows, double test_fraction,
                       std::uint64_t seed, const std::string& group_name);

struct GroupResult {
  std::string name;
  std::size_t n = 0;
  std::vector<learn::Metrics> per_seed;
  learn::Metrics mean;  // averaged over seeds
};

/// Fits and scores one row group on the selected columns; nullptr selects
/// every column and an empty selection fits the intercept alone.
GroupResult evaluate_group(const LabeledDataset& data,
                           std::span<const std::size_t> rows,
                           const std::vector<std::size_t>* columns,
                           const SplitConfig& cfg, const std::string& name);

struct EvalReport {
  CutPoints cuts;
  std::vector<GroupResult> clusters;  // non-empty clusters, in size order
  GroupResult single;                 // the undivided corpus
  learn::Metrics cluster_average;     // unweighted mean of cluster means
  std::vector<std::uint64_t> seeds;
};

/// Empty clusters are skipped. Throws Error(ClusterTooSmall).
EvalReport evaluate_clusters(const ClusterAssignment& assignment,
                             const LabeledDataset& data, const SplitConfig& cfg,
                             const std::vector<std::size_t>* columns = nullptr);

/// Reassigns labels by a seeded permutation (null-control input).
LabeledDataset shuffle_labels(LabeledDataset data, std::uint64_t seed);

}  // namespace repoprint::pipeline
