#pragma once

#include <optional>
#include <string>

#include "repoprint/pipeline/ablation.hpp"
#include "repoprint/pipeline/case_study.hpp"
#include "repoprint/pipeline/evaluation.hpp"

namespace repoprint::pipeline {

inline constexpr int kReportFormatVersion = 1;

/// One row per cluster, then "average" and "single"; precision, recall and F1
/// for each class and macro-averaged, accuracy and majority baseline.
std::string format_eval_report(const EvalReport& r, const std::string& positive,
                               const std::string& negative);
/// metric,single,cluster_average,comparison where comparison is "s/a".
std::string format_clustering_comparison(const EvalReport& r);
std::string format_ablation_loo(const AblationReport& r);
std::string format_ablation_groups(const AblationReport& r);
std::string format_case_study(const CaseStudyResult& r);
std::string format_pca_coords(const CaseStudyResult& r);

/// Versioned JSON bundling whichever reports are present.
std::string format_summary(const EvalReport* eval, const AblationReport* loo,
                           const AblationReport* groups,
                           const CaseStudyResult* case_study);

}  // namespace repoprint::pipeline
