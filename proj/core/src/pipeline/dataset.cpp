#include "repoprint/pipeline/dataset.hpp"

#include <algorithm>
#include <set>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"

namespace repoprint::pipeline {
namespace {

bool allowed_label(std::span<const std::string> allowed, const std::string& l) {
  return allowed.empty() || std::find(allowed.begin(), allowed.end(), l) != allowed.end();
}

template <typename LabelOf>
LabeledDataset build(const features::FeatureTable& table,
                     std::span<const std::string> allowed, JoinReport* report,
                     LabelOf&& label_of) {
  LabeledDataset d;
  d.schema = table.schema;
  JoinReport rep;
  rep.rows = table.rows.size();
  std::vector<const features::FeatureRow*> kept;
  for (const auto& row : table.rows) {
    const std::string* label = label_of(row);
    if (!label) {
      ++rep.unlabeled;
      continue;
    }
    if (!allowed_label(allowed, *label)) {
      ++rep.other_classes;
      continue;
    }
    kept.push_back(&row);
    d.labels.push_back(*label);
  }
  d.X = learn::Matrix(kept.size(), table.schema.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i]->values.size() != table.schema.size()) {
      fail(Errc::DimensionMismatch, "feature row " + kept[i]->repo_id +
                                        " does not match the schema width");
    }
    std::copy(kept[i]->values.begin(), kept[i]->values.end(), d.X.row(i).begin());
    d.repo_ids.push_back(kept[i]->repo_id);
    d.activity.push_back(kept[i]->activity_count);
  }
  if (report) *report = rep;
  return d;
}

}  // namespace

LabelMap parse_labels(std::string_view csv_text, std::string_view label_column) {
  const auto t = csv::Table::parse(csv_text);
  const auto id = t.column("repo_id");
  const auto lc = t.column(label_column);
  LabelMap out;
  for (const auto& row : t.rows()) {
    if (!out.emplace(row[id], row[lc]).second) {
      fail(Errc::ParseError, "duplicate label for repo '" + row[id] + "'");
    }
  }
  return out;
}

LabelMap load_labels(const std::string& path, std::string_view label_column) {
  return parse_labels(read_file(path), label_column);
}

LabeledDataset join_labels(const features::FeatureTable& table,
                           const LabelMap& labels,
                           std::span<const std::string> allowed,
                           JoinReport* report) {
  return build(table, allowed, report,
               [&](const features::FeatureRow& row) -> const std::string* {
                 auto it = labels.find(row.repo_id);
                 return it == labels.end() ? nullptr : &it->second;
               });
}

LabeledDataset dataset_from_table(const features::FeatureTable& table,
                                  std::span<const std::string> allowed,
                                  JoinReport* report) {
  return build(table, allowed, report,
               [](const features::FeatureRow& row) -> const std::string* {
                 return row.country.empty() ? nullptr : &row.country;
               });
}

CountryAssignmentReport assign_countries(std::vector<RepoRecord>& records,
                                         std::span<const ingest::UserProfile> users,
                                         ingest::LocationResolver& resolver,
                                         const ingest::CurationConfig& cfg) {
  CountryAssignmentReport rep;
  ingest::UserCountries countries;
  for (const auto& u : users) {
    auto c = ingest::resolve_country(u.location, resolver);
    countries.insert_or_assign(u.actor, c);
  }
  rep.users = countries.size();
  for (const auto& [actor, c] : countries) rep.users_resolved += c.has_value();
  for (auto& r : records) {
    r.country.reset();
    if (!r.contributors.empty()) {
      r.country = ingest::assign_repo_country(r, countries, cfg);
    }
    if (r.country) {
      ++rep.repos_labeled;
    } else {
      ++rep.repos_unlabeled;
    }
  }
  rep.resolve = resolver.report();
  return rep;
}

}  // namespace repoprint::pipeline
