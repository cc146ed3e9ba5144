#include "repoprint/learn/metrics.hpp"

#include <algorithm>
#include <set>

#include "repoprint/core/error.hpp"

namespace repoprint::learn {

const ClassMetrics& Metrics::of(const std::string& label) const {
  auto it = per_class.find(label);
  if (it == per_class.end()) {
    fail(Errc::UnknownFeatureName, "no metrics for label '" + label + "'");
  }
  return it->second;
}

Metrics compute_metrics(std::span<const std::string> y_true,
                        std::span<const std::string> y_pred,
                        const std::string& positive_label) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    fail(Errc::LengthMismatch, "y_true and y_pred must be equal and non-empty");
  }
  std::set<std::string> others(y_true.begin(), y_true.end());
  others.insert(y_pred.begin(), y_pred.end());
  others.erase(positive_label);
  Metrics m;
  m.n = y_true.size();
  m.labels.push_back(positive_label);
  m.labels.insert(m.labels.end(), others.begin(), others.end());

  std::size_t correct = 0;
  for (std::size_t i = 0; i < m.n; ++i) correct += y_true[i] == y_pred[i];
  m.accuracy = static_cast<double>(correct) / static_cast<double>(m.n);

  std::size_t majority = 0;
  for (const auto& label : m.labels) {
    std::size_t tp = 0, fp = 0, fn = 0, support = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
      const bool t = y_true[i] == label;
      const bool p = y_pred[i] == label;
      support += t;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    ClassMetrics c;
    c.support = support;
    c.precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    c.recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    c.f1 = c.precision + c.recall > 0.0
               ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
    majority = std::max(majority, support);
    m.per_class[label] = c;
    m.macro_precision += c.precision;
    m.macro_recall += c.recall;
    m.macro_f1 += c.f1;
  }
  const double k = static_cast<double>(m.labels.size());
  m.macro_precision /= k;
  m.macro_recall /= k;
  m.macro_f1 /= k;
  m.majority_baseline = static_cast<double>(majority) / static_cast<double>(m.n);
  return m;
}

Metrics average_metrics(std::span<const Metrics> all) {
  Metrics out;
  if (all.empty()) return out;
  out.labels = all.front().labels;
  for (const auto& m : all) {
    for (const auto& l : m.labels) {
      if (std::find(out.labels.begin(), out.labels.end(), l) == out.labels.end()) {
        out.labels.push_back(l);
      }
    }
  }
  const double k = static_cast<double>(all.size());
  for (const auto& l : out.labels) {
    ClassMetrics c;
    for (const auto& m : all) {
      auto it = m.per_class.find(l);
      if (it == m.per_class.end()) continue;
      c.precision += it->second.precision / k;
      c.recall += it->second.recall / k;
      c.f1 += it->second.f1 / k;
      c.support += it->second.support;
    }
    out.per_class[l] = c;
  }
  for (const auto& m : all) {
    out.accuracy += m.accuracy / k;
    out.macro_precision += m.macro_precision / k;
    out.macro_recall += m.macro_recall / k;
    out.macro_f1 += m.macro_f1 / k;
    out.majority_baseline += m.majority_baseline / k;
    out.n += m.n;
  }
  return out;
}

}  // namespace repoprint::learn
