#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/learn/pca.hpp"

namespace repoprint::pipeline {

struct CompanyRepo {
  std::string company;
  std::string repo_id;
  std::vector<double> features;
};

struct CaseStudyRow {
  std::string company;
  std::string repo_id;
  std::string predicted;
};

struct CaseStudyResult {
  std::vector<CaseStudyRow> rows;
  learn::PcaProjection pca;
  double self_label_rate = 0.0;
};

/// Loads `company,repo_id,<features...>` CSV; `country` and
/// `activity_count` columns are ignored when present.
std::vector<CompanyRepo> load_company_repos(const std::string& path);
std::vector<CompanyRepo> parse_company_repos(std::string_view csv_text);

/// Leave-one-out KNN over company labels on standardized features, plus a
/// PCA projection. Throws Error(InsufficientCorpus).
CaseStudyResult case_study(std::span<const CompanyRepo> repos, std::size_t k);

}  // namespace repoprint::pipeline
