#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace repoprint::learn {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct Metrics {
  /// Positive label first, then the others in lexicographic order.
  std::vector<std::string> labels;
  std::map<std::string, ClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double majority_baseline = 0.0;
  std::size_t n = 0;

  const ClassMetrics& of(const std::string& label) const;
};

/// Throws Error(LengthMismatch) for unequal or empty inputs.
Metrics compute_metrics(std::span<const std::string> y_true,
                        std::span<const std::string> y_pred,
                        const std::string& positive_label);

/// Field-wise arithmetic mean over the given metrics (labels taken from the
/// first; classes missing from one entry count as zeros).
Metrics average_metrics(std::span<const Metrics> all);

}  // namespace repoprint::learn
