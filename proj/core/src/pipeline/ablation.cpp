#include "repoprint/pipeline/ablation.hpp"

#include <algorithm>

namespace repoprint::pipeline {
namespace {

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& drop) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
  }
  return keep;
}

}  // namespace

FeatureUnit resolve_unit(const features::FeatureSchema& schema,
                         const std::string& name) {
  using features::FeatureBlock;
  FeatureUnit u;
  u.name = name;
  if (name == "profile") {
    u.columns = schema.block_columns(FeatureBlock::Profile);
  } else if (name == "activity") {
    u.columns = schema.block_columns(FeatureBlock::Activity);
  } else if (name == "sequence" || name == "seq_emb") {
    u.columns = schema.block_columns(FeatureBlock::Sequence);
  } else if (auto c = schema.find(name)) {
    u.columns = {*c};
  } else {
    fail(Errc::UnknownFeatureName, "unknown feature or block '" + name + "'");
  }
  return u;
}

std::vector<std::string> default_loo_units(const features::FeatureSchema& schema) {
  std::vector<std::string> units;
  bool has_sequence = false;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema.block_of(i) == features::FeatureBlock::Sequence) {
      has_sequence = true;
    } else {
      units.push_back(schema.names()[i]);
    }
  }
  if (has_sequence) units.push_back("seq_emb");
  return units;
}

AblationReport ablation_leave_one_out(const LabeledDataset& data,
                                      const ClusterAssignment& assignment,
                                      std::span<const std::string> units,
                                      const SplitConfig& cfg) {
  std::vector<std::string> names(units.begin(), units.end());
  if (names.empty()) names = default_loo_units(data.schema);
  std::vector<FeatureUnit> resolved;
  for (const auto& n : names) resolved.push_back(resolve_unit(data.schema, n));

  AblationReport r;
  for (Cluster c : kAllClusters) {
    const auto rows = assignment.members(c);
    if (rows.empty()) continue;
    const std::string cname(cluster_name(c));
    const double all = evaluate_group(data, rows, nullptr, cfg, cname).mean.accuracy;
    for (const auto& u : resolved) {
      double without = all;
      if (!u.columns.empty()) {
        const auto keep = complement(data.X.cols, u.columns);
        without = evaluate_group(data, rows, &keep, cfg, cname).mean.accuracy;
      }
      r.loo.push_back({cname, u.name, all, without, without - all});
    }
  }
  return r;
}

std::vector<std::string> group_combinations() {
  return {"profile",          "activity",          "sequence",
          "profile+activity", "profile+sequence",  "activity+sequence",
          "profile+activity+sequence"};
}

AblationReport ablation_groups(const LabeledDataset& data,
                               const ClusterAssignment& assignment,
                               const SplitConfig& cfg) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> combos;
  for (const auto& name : group_combinations()) {
    std::vector<std::size_t> cols;
    std::size_t start = 0;
    while (start <= name.size()) {
      auto plus = name.find('+', start);
      const auto part = name.substr(start, plus == std::string::npos ? std::string::npos
                                                                     : plus - start);
      const auto u = resolve_unit(data.schema, part);
      cols.insert(cols.end(), u.columns.begin(), u.columns.end());
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    std::sort(cols.begin(), cols.end());
    combos.emplace_back(name, std::move(cols));
  }
  AblationReport r;
  for (Cluster c : kAllClusters) {
    const auto rows = assignment.members(c);
    if (rows.empty()) continue;
    const std::string cname(cluster_name(c));
    for (const auto& [name, cols] : combos) {
      // a combination of absent blocks fits the intercept alone
      const double acc = evaluate_group(data, rows, &cols, cfg, cname).mean.accuracy;
      r.groups.push_back({cname, name, acc});
    }
  }
  return r;
}

}  // namespace repoprint::pipeline
