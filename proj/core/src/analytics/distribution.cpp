#include "repoprint/analytics/distribution.hpp"

#include <cmath>
#include <numeric>

#include "repoprint/core/error.hpp"

namespace repoprint::analytics {

ProbDist ProbDist::from_counts(std::vector<std::string> support,
                               std::span<const double> counts) {
  if (support.size() != counts.size()) {
    fail(Errc::SupportMismatch, "support and counts differ in length");
  }
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(total > 0.0)) fail(Errc::EmptyEventPool, "no events to build a distribution");
  ProbDist d;
  d.support = std::move(support);
  d.probs.reserve(counts.size());
  for (double c : counts) d.probs.push_back(c / total);
  return d;
}

double ProbDist::prob(std::string_view category) const {
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] == category) return probs[i];
  }
  return 0.0;
}

ProbDist event_type_distribution(std::span<const RepoRecord> records,
                                 bool include_watch) {
  std::vector<double> counts(kEventTypeCount, 0.0);
  for (const auto& r : records) {
    for (const auto& e : r.events) counts[index_of(e.type)] += 1.0;
  }
  std::vector<std::string> support;
  std::vector<double> kept;
  for (EventType t : kAllEventTypes) {
    if (!include_watch && t == EventType::Watch) continue;
    support.emplace_back(to_name(t));
    kept.push_back(counts[index_of(t)]);
  }
  return ProbDist::from_counts(std::move(support), kept);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    fail(Errc::SupportMismatch, "KL divergence needs equal, non-empty supports");
  }
  const double n = static_cast<double>(p.size());
  double p_norm = 0.0, q_norm = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p_norm += p[i];
    q_norm += q[i];
  }
  p_norm += n * kKlSmoothing;
  q_norm += n * kKlSmoothing;
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = (p[i] + kKlSmoothing) / p_norm;
    const double qi = (q[i] + kKlSmoothing) / q_norm;
    kl += pi * std::log(pi / qi);
  }
  return kl;
}

double kl_divergence(const ProbDist& p, const ProbDist& q) {
  if (p.support != q.support) {
    fail(Errc::SupportMismatch, "distributions have different supports");
  }
  return kl_divergence(std::span<const double>(p.probs),
                       std::span<const double>(q.probs));
}

}  // namespace repoprint::analytics
