#include "repoprint/pipeline/case_study.hpp"

#include <charconv>
#include <set>

#include "repoprint/core/binary_io.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/learn/knn.hpp"
#include "repoprint/learn/standardizer.hpp"

namespace repoprint::pipeline {

std::vector<CompanyRepo> parse_company_repos(std::string_view csv_text) {
  const auto t = csv::Table::parse(csv_text);
  const auto company = t.column("company");
  const auto repo = t.column("repo_id");
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < t.header().size(); ++i) {
    const auto& h = t.header()[i];
    if (i == company || i == repo || h == "country" || h == "activity_count") continue;
    cols.push_back(i);
  }
  std::vector<CompanyRepo> out;
  for (const auto& row : t.rows()) {
    CompanyRepo r{row[company], row[repo], {}};
    for (auto c : cols) {
      double v = 0.0;
      const auto& s = row[c];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        fail(Errc::ParseError, "bad feature value '" + s + "' for " + r.repo_id);
      }
      r.features.push_back(v);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CompanyRepo> load_company_repos(const std::string& path) {
  return parse_company_repos(read_file(path));
}

CaseStudyResult case_study(std::span<const CompanyRepo> repos, std::size_t k) {
  std::set<std::string> companies;
  for (const auto& r : repos) companies.insert(r.company);
  if (companies.size() < 2) {
    fail(Errc::InsufficientCorpus, "the case study needs at least two companies");
  }
  if (k == 0 || k >= repos.size()) {
    fail(Errc::InsufficientCorpus, "k must satisfy 1 <= k < " +
                                       std::to_string(repos.size()));
  }
  const std::size_t d = repos.front().features.size();
  learn::Matrix X(repos.size(), d);
  for (std::size_t i = 0; i < repos.size(); ++i) {
    if (repos[i].features.size() != d) {
      fail(Errc::DimensionMismatch, "company repos have ragged feature vectors");
    }
    std::copy(repos[i].features.begin(), repos[i].features.end(), X.row(i).begin());
  }
  const learn::Matrix Z = learn::Standardizer::fit(X).transform(X);

  CaseStudyResult out;
  std::size_t self = 0;
  for (std::size_t i = 0; i < repos.size(); ++i) {
    std::vector<std::size_t> others;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < repos.size(); ++j) {
      if (j == i) continue;
      others.push_back(j);
      labels.push_back(repos[j].company);
    }
    const auto train = Z.select_rows(others);
    const auto predicted = learn::knn_label(train, labels, Z.row(i), k);
    self += predicted == repos[i].company;
    out.rows.push_back({repos[i].company, repos[i].repo_id, predicted});
  }
  out.self_label_rate = static_cast<double>(self) / static_cast<double>(repos.size());
  out.pca = learn::pca_2d(Z);
  return out;
}

}  // namespace repoprint::pipeline
