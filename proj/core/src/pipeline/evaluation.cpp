#include "repoprint/pipeline/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "repoprint/core/parallel.hpp"
#include "repoprint/core/random.hpp"

namespace repoprint::pipeline {

std::uint64_t SplitConfig::seed_for(std::size_t i) const {
  return mix_seed(base_seed, i);
}

Split stratified_split(std::span<const std::string> labels,
                       std::span<const std::size_t> rows, double test_fraction,
                       std::uint64_t seed, const std::string& group_name) {
  std::map<std::string_view, std::vector<std::size_t>> by_class;
  for (auto r : rows) by_class[labels[r]].push_back(r);
  if (by_class.size() < 2) {
    fail(Errc::ClusterTooSmall, "group '" + group_name +
                                    "' needs two classes for a stratified split");
  }
  Rng rng(mix_seed(seed, 0x73706c));
  Split s;
  for (auto& [label, members] : by_class) {
    if (members.size() < 2) {
      fail(Errc::ClusterTooSmall, "group '" + group_name + "' has " +
                                      std::to_string(members.size()) +
                                      " member(s) of class " + std::string(label));
    }
    std::shuffle(members.begin(), members.end(), rng);
    const auto n = static_cast<double>(members.size());
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * n));
    n_test = std::clamp<std::size_t>(n_test, 1, members.size() - 1);
    s.test.insert(s.test.end(), members.begin(), members.begin() + n_test);
    s.train.insert(s.train.end(), members.begin() + n_test, members.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

GroupResult evaluate_group(const LabeledDataset& data,
                           std::span<const std::size_t> rows,
                           const std::vector<std::size_t>* columns,
                           const SplitConfig& cfg, const std::string& name) {
  std::vector<std::size_t> cols;
  if (columns) {
    cols = *columns;
  } else {
    cols.resize(data.X.cols);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
  }
  std::string negative;
  for (auto r : rows) {
    if (data.labels[r] != cfg.positive_label) {
      negative = data.labels[r];
      break;
    }
  }
  GroupResult g;
  g.name = name;
  g.n = rows.size();
  g.per_seed.resize(cfg.seeds);
  const learn::Matrix Xc = data.X.select_cols(cols);
  parallel_for(cfg.seeds, cfg.threads, [&](std::size_t i) {
    const Split s = stratified_split(data.labels, rows, cfg.test_fraction,
                                     cfg.seed_for(i), name);
    const learn::Matrix Xtr = Xc.select_rows(s.train);
    std::vector<int> y;
    y.reserve(s.train.size());
    for (auto r : s.train) y.push_back(data.labels[r] == cfg.positive_label);
    const auto model = learn::fit_logreg(Xtr, y, cfg.logreg);
    std::vector<std::string> truth, pred;
    for (auto r : s.test) {
      truth.push_back(data.labels[r]);
      pred.push_back(learn::predict(model, Xc.row(r)) ? cfg.positive_label : negative);
    }
    g.per_seed[i] = learn::compute_metrics(truth, pred, cfg.positive_label);
  });
  g.mean = learn::average_metrics(g.per_seed);
  return g;
}

EvalReport evaluate_clusters(const ClusterAssignment& assignment,
                             const LabeledDataset& data, const SplitConfig& cfg,
                             const std::vector<std::size_t>* columns) {
  if (assignment.assignment.size() != data.size()) {
    fail(Errc::LengthMismatch, "cluster assignment and dataset differ in length");
  }
  if (cfg.seeds == 0) fail(Errc::InvalidConfig, "at least one seed is required");
  EvalReport r;
  r.cuts = assignment.cuts;
  for (std::size_t i = 0; i < cfg.seeds; ++i) r.seeds.push_back(cfg.seed_for(i));
  std::vector<learn::Metrics> means;
  for (Cluster c : kAllClusters) {
    const auto rows = assignment.members(c);
    if (rows.empty()) continue;
    r.clusters.push_back(
        evaluate_group(data, rows, columns, cfg, std::string(cluster_name(c))));
    means.push_back(r.clusters.back().mean);
  }
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  r.single = evaluate_group(data, all, columns, cfg, "single");
  r.cluster_average = learn::average_metrics(means);
  return r;
}

LabeledDataset shuffle_labels(LabeledDataset data, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x736875));
  std::shuffle(data.labels.begin(), data.labels.end(), rng);
  return data;
}

}  // namespace repoprint::pipeline
