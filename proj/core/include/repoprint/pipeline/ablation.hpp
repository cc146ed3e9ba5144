#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/pipeline/evaluation.hpp"

namespace repoprint::pipeline {

/// A feature or feature block that is withheld (or kept) as one unit.
struct FeatureUnit {
  std::string name;
  std::vector<std::size_t> columns;
};

/// Resolves column names and the block names "profile", "activity",
/// "sequence" (alias "seq_emb"). Throws Error(UnknownFeatureName).
FeatureUnit resolve_unit(const features::FeatureSchema& schema,
                         const std::string& name);

/// One unit per profile and fingerprint column plus the sequence block.
std::vector<std::string> default_loo_units(const features::FeatureSchema& schema);

struct LooCell {
  std::string cluster;
  std::string unit;
  double accuracy_all = 0.0;
  double accuracy_without = 0.0;
  double delta = 0.0;  // accuracy_without - accuracy_all
};

struct GroupCell {
  std::string cluster;
  std::string combination;
  double accuracy = 0.0;
};

struct AblationReport {
  std::vector<LooCell> loo;
  std::vector<GroupCell> groups;
};

/// Refits every cluster with each unit withheld; an empty unit list uses
/// `default_loo_units`. Splits and seeds match `evaluate_clusters`.
AblationReport ablation_leave_one_out(const LabeledDataset& data,
                                      const ClusterAssignment& assignment,
                                      std::span<const std::string> units,
                                      const SplitConfig& cfg);

/// The seven non-empty unions of the profile, activity and sequence blocks.
std::vector<std::string> group_combinations();

/// Per cluster and combination, accuracy of a model trained on only those
/// blocks.
AblationReport ablation_groups(const LabeledDataset& data,
                               const ClusterAssignment& assignment,
                               const SplitConfig& cfg);

}  // namespace repoprint::pipeline
