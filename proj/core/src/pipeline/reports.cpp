#include "repoprint/pipeline/reports.hpp"

#include <cstdio>

#include "json.hpp"
#include "repoprint/core/csv.hpp"

namespace repoprint::pipeline {
namespace {

using json = nlohmann::json;
using csv::format_double;

csv::Row metric_cells(const learn::Metrics& m, const std::string& positive,
                      const std::string& negative) {
  csv::Row row;
  for (const auto& label : {positive, negative}) {
    auto it = m.per_class.find(label);
    const learn::ClassMetrics c = it == m.per_class.end() ? learn::ClassMetrics{} : it->second;
    row.push_back(format_double(c.precision));
    row.push_back(format_double(c.recall));
    row.push_back(format_double(c.f1));
  }
  row.push_back(format_double(m.macro_precision));
  row.push_back(format_double(m.macro_recall));
  row.push_back(format_double(m.macro_f1));
  row.push_back(format_double(m.accuracy));
  row.push_back(format_double(m.majority_baseline));
  return row;
}

std::string pair4(double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f/%.4f", a, b);
  return buf;
}

json metrics_json(const learn::Metrics& m) {
  json j;
  j["accuracy"] = m.accuracy;
  j["majority_baseline"] = m.majority_baseline;
  j["macro_precision"] = m.macro_precision;
  j["macro_recall"] = m.macro_recall;
  j["macro_f1"] = m.macro_f1;
  j["n"] = m.n;
  json classes = json::object();
  for (const auto& [label, c] : m.per_class) {
    classes[label] = {{"precision", c.precision}, {"recall", c.recall},
                      {"f1", c.f1}, {"support", c.support}};
  }
  j["per_class"] = classes;
  return j;
}

json group_json(const GroupResult& g) {
  json j = metrics_json(g.mean);
  j["group"] = g.name;
  j["size"] = g.n;
  json seeds = json::array();
  for (const auto& m : g.per_seed) seeds.push_back(m.accuracy);
  j["accuracy_per_seed"] = seeds;
  return j;
}

struct Comparison {
  const char* name;
  double single;
  double average;
};

std::vector<Comparison> comparisons(const EvalReport& r) {
  return {{"precision", r.single.mean.macro_precision, r.cluster_average.macro_precision},
          {"recall", r.single.mean.macro_recall, r.cluster_average.macro_recall},
          {"f1", r.single.mean.macro_f1, r.cluster_average.macro_f1},
          {"accuracy", r.single.mean.accuracy, r.cluster_average.accuracy}};
}

}  // namespace

std::string format_eval_report(const EvalReport& r, const std::string& positive,
                               const std::string& negative) {
  csv::Row header = {"group", "n"};
  for (const auto& label : {positive, negative}) {
    for (const char* m : {"_precision", "_recall", "_f1"}) header.push_back(label + m);
  }
  for (const char* h : {"combined_precision", "combined_recall", "combined_f1",
                        "accuracy", "majority"}) {
    header.push_back(h);
  }
  std::string out = csv::format_row(header);
  auto emit = [&](const std::string& name, std::size_t n, const learn::Metrics& m) {
    csv::Row row = {name, std::to_string(n)};
    auto cells = metric_cells(m, positive, negative);
    row.insert(row.end(), cells.begin(), cells.end());
    out += csv::format_row(row);
  };
  std::size_t total = 0;
  for (const auto& g : r.clusters) {
    emit(g.name, g.n, g.mean);
    total += g.n;
  }
  emit("average", total, r.cluster_average);
  emit("single", r.single.n, r.single.mean);
  return out;
}

std::string format_clustering_comparison(const EvalReport& r) {
  std::string out =
      csv::format_row({"metric", "single", "cluster_average", "comparison"});
  for (const auto& c : comparisons(r)) {
    out += csv::format_row({c.name, format_double(c.single), format_double(c.average),
                            pair4(c.single, c.average)});
  }
  return out;
}

std::string format_ablation_loo(const AblationReport& r) {
  std::string out = csv::format_row(
      {"cluster", "feature", "accuracy_all", "accuracy_without", "delta"});
  for (const auto& c : r.loo) {
    out += csv::format_row({c.cluster, c.unit, format_double(c.accuracy_all),
                            format_double(c.accuracy_without), format_double(c.delta)});
  }
  return out;
}

std::string format_ablation_groups(const AblationReport& r) {
  std::string out = csv::format_row({"cluster", "group", "accuracy"});
  for (const auto& c : r.groups) {
    out += csv::format_row({c.cluster, c.combination, format_double(c.accuracy)});
  }
  return out;
}

std::string format_case_study(const CaseStudyResult& r) {
  std::string out = csv::format_row({"company", "repo_id", "predicted"});
  for (const auto& row : r.rows) {
    out += csv::format_row({row.company, row.repo_id, row.predicted});
  }
  return out;
}

std::string format_pca_coords(const CaseStudyResult& r) {
  std::string out = csv::format_row({"company", "repo_id", "pc1", "pc2"});
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out += csv::format_row({r.rows[i].company, r.rows[i].repo_id,
                            format_double(r.pca.coords(i, 0)),
                            format_double(r.pca.coords(i, 1))});
  }
  return out;
}

std::string format_summary(const EvalReport* eval, const AblationReport* loo,
                           const AblationReport* groups,
                           const CaseStudyResult* cs) {
  json j;
  j["format_version"] = kReportFormatVersion;
  if (eval) {
    json e;
    e["cuts"] = {eval->cuts.q25, eval->cuts.q50, eval->cuts.q75};
    e["seeds"] = eval->seeds;
    json clusters = json::array();
    for (const auto& g : eval->clusters) clusters.push_back(group_json(g));
    e["clusters"] = clusters;
    e["single"] = group_json(eval->single);
    e["cluster_average"] = metrics_json(eval->cluster_average);
    json cmp = json::object();
    for (const auto& c : comparisons(*eval)) {
      cmp[c.name] = {{"single", c.single},
                     {"cluster_average", c.average},
                     {"formatted", pair4(c.single, c.average)}};
    }
    e["comparison"] = cmp;
    j["evaluation"] = e;
  }
  if (loo) {
    json a = json::array();
    for (const auto& c : loo->loo) {
      a.push_back({{"cluster", c.cluster}, {"feature", c.unit},
                   {"accuracy_all", c.accuracy_all},
                   {"accuracy_without", c.accuracy_without}, {"delta", c.delta}});
    }
    j["ablation_loo"] = a;
  }
  if (groups) {
    json a = json::array();
    for (const auto& c : groups->groups) {
      a.push_back({{"cluster", c.cluster}, {"group", c.combination},
                   {"accuracy", c.accuracy}});
    }
    j["ablation_groups"] = a;
  }
  if (cs) {
    json rows = json::array();
    for (std::size_t i = 0; i < cs->rows.size(); ++i) {
      rows.push_back({{"company", cs->rows[i].company},
                      {"repo_id", cs->rows[i].repo_id},
                      {"predicted", cs->rows[i].predicted},
                      {"pc1", cs->pca.coords(i, 0)},
                      {"pc2", cs->pca.coords(i, 1)}});
    }
    j["case_study"] = {{"self_label_rate", cs->self_label_rate},
                       {"pca_degenerate", cs->pca.degenerate},
                       {"rows", rows}};
  }
  return j.dump(2) + "\n";
}

}  // namespace repoprint::pipeline
