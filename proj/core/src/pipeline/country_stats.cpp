#include "repoprint/pipeline/country_stats.hpp"

#include <cmath>
#include <limits>

#include "repoprint/analytics/distribution.hpp"
#include "repoprint/analytics/ztest.hpp"
#include "repoprint/core/csv.hpp"
#include "repoprint/core/error.hpp"
#include "repoprint/features/profile.hpp"

namespace repoprint::pipeline {
namespace {

struct Scalars {
  std::vector<double> stars, forks, open_issues, comment_len, iat_days, leaders,
      jaccard;
};

Scalars collect(std::span<const RepoRecord> records,
                const features::TextTranslator& translator) {
  Scalars s;
  for (const auto& r : records) {
    s.stars.push_back(static_cast<double>(r.stars));
    s.forks.push_back(static_cast<double>(r.forks));
    s.open_issues.push_back(static_cast<double>(r.open_issues));
    s.comment_len.push_back(features::mean_commit_comment_length(r, translator));
    s.leaders.push_back(static_cast<double>(features::leader_count(r.events)));
    if (r.events.size() >= 2) {
      s.iat_days.push_back(features::median_interarrival_days(r.events));
    }
    if (!r.watchers.empty() || !r.contributors.empty()) {
      s.jaccard.push_back(features::watcher_contributor_jaccard(r));
    }
  }
  return s;
}

}  // namespace

std::vector<StatRow> compare_countries(std::span<const RepoRecord> records,
                                       const CountryLabel& a,
                                       const CountryLabel& b,
                                       const features::TextTranslator& translator) {
  std::vector<RepoRecord> ra, rb;
  for (const auto& r : records) {
    if (r.country == a) ra.push_back(r);
    if (r.country == b) rb.push_back(r);
  }
  if (ra.size() < 2 || rb.size() < 2) {
    fail(Errc::InsufficientSamples, "each country needs at least 2 repos (" +
                                        a.code() + ": " + std::to_string(ra.size()) +
                                        ", " + b.code() + ": " +
                                        std::to_string(rb.size()) + ")");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<StatRow> rows;
  for (bool watch : {false, true}) {
    const auto pa = analytics::event_type_distribution(ra, watch);
    const auto pb = analytics::event_type_distribution(rb, watch);
    const std::string suffix = watch ? "_with_watch" : "";
    rows.push_back({"kl_event_types" + suffix, a.code(), b.code(),
                    analytics::kl_divergence(pa, pb), nan});
    rows.push_back({"kl_event_types" + suffix, b.code(), a.code(),
                    analytics::kl_divergence(pb, pa), nan});
  }
  const Scalars sa = collect(ra, translator);
  const Scalars sb = collect(rb, translator);
  const std::pair<const char*, std::vector<double> Scalars::*> metrics[] = {
      {"stars", &Scalars::stars},         {"forks", &Scalars::forks},
      {"open_issues", &Scalars::open_issues}, {"comment_len", &Scalars::comment_len},
      {"iat_days", &Scalars::iat_days},   {"leaders", &Scalars::leaders},
      {"jaccard", &Scalars::jaccard}};
  for (const auto& [name, field] : metrics) {
    const auto& va = sa.*field;
    const auto& vb = sb.*field;
    try {
      const auto z = analytics::two_sample_z_test(va, vb);
      rows.push_back({std::string("z_") + name, a.code(), b.code(), z.z, z.p_two_sided});
    } catch (const Error& e) {
      // constant samples with different means have no finite z; skip them
      if (e.code() != Errc::ZeroVariance && e.code() != Errc::InsufficientSamples) throw;
    }
  }
  return rows;
}

std::string format_stats(std::span<const StatRow> rows) {
  std::string out = csv::format_row({"metric", "group_a", "group_b", "value", "p_value"});
  for (const auto& r : rows) {
    out += csv::format_row({r.metric, r.group_a, r.group_b, csv::format_double(r.value),
                            std::isnan(r.p_value) ? "" : csv::format_double(r.p_value)});
  }
  return out;
}

}  // namespace repoprint::pipeline
