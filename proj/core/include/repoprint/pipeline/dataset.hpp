#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "repoprint/core/repo_record.hpp"
#include "repoprint/features/feature_vector.hpp"
#include "repoprint/ingest/curation.hpp"
#include "repoprint/ingest/geocoder.hpp"
#include "repoprint/learn/matrix.hpp"

namespace repoprint::pipeline {

/// repo_id -> label, from a `repo_id,<label_column>` CSV.
using LabelMap = std::map<std::string, std::string, std::less<>>;

LabelMap parse_labels(std::string_view csv_text,
                      std::string_view label_column = "country");
LabelMap load_labels(const std::string& path,
                     std::string_view label_column = "country");

/// Feature rows joined with their labels.
struct LabeledDataset {
  features::FeatureSchema schema;
  std::vector<std::string> repo_ids;
  learn::Matrix X;
  std::vector<std::string> labels;
  std::vector<std::size_t> activity;

  std::size_t size() const noexcept { return labels.size(); }
};

struct JoinReport {
  std::size_t rows = 0;
  std::size_t unlabeled = 0;      // no entry in the label map
  std::size_t other_classes = 0;  // label outside the allowed set
};

/// Keeps rows whose label (from `labels`) is one of `allowed`; an empty
/// `allowed` keeps every labelled row.
LabeledDataset join_labels(const features::FeatureTable& table,
                           const LabelMap& labels,
                           std::span<const std::string> allowed,
                           JoinReport* report = nullptr);

/// Same, taking labels from the table's own country column.
LabeledDataset dataset_from_table(const features::FeatureTable& table,
                                  std::span<const std::string> allowed,
                                  JoinReport* report = nullptr);

struct CountryAssignmentReport {
  std::size_t users = 0;
  std::size_t users_resolved = 0;
  std::size_t repos_labeled = 0;
  std::size_t repos_unlabeled = 0;
  ingest::ResolveReport resolve;
};

/// Geocodes every user location and labels each record with the majority
/// country of its contributors.
CountryAssignmentReport assign_countries(std::vector<RepoRecord>& records,
                                         std::span<const ingest::UserProfile> users,
                                         ingest::LocationResolver& resolver,
                                         const ingest::CurationConfig& cfg);

}  // namespace repoprint::pipeline
