#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/learn/matrix.hpp"
#include "repoprint/learn/standardizer.hpp"

namespace repoprint::learn {

struct LogRegConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2_lambda = 1e-3;
};

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  Standardizer standardizer;
  double l2_lambda = 0.0;
  std::vector<std::string> feature_names;

  std::size_t dim() const noexcept { return weights.size(); }
};

struct LogRegFit {
  LogRegModel model;
  /// Regularized mean log loss before each epoch's update, plus the final one.
  std::vector<double> loss_history;
};

/// Full-batch gradient descent on mean log loss + (λ/2)|w|² over
/// standardized features. y holds 1 for the positive class and 0 otherwise.
/// Throws Error(SingleClassTraining) or Error(DimensionMismatch).
LogRegFit fit_logreg_detailed(const Matrix& X, std::span<const int> y,
                              const LogRegConfig& cfg);
LogRegModel fit_logreg(const Matrix& X, std::span<const int> y,
                       const LogRegConfig& cfg);

/// sigm(w · standardize(x) + b). Throws Error(DimensionMismatch).
double predict_proba(const LogRegModel& m, std::span<const double> x);
/// Positive class when proba >= 0.5.
int predict(const LogRegModel& m, std::span<const double> x);

/// JSON with weights, bias, standardizer and feature names.
std::string logreg_to_json(const LogRegModel& m);

}  // namespace repoprint::learn
