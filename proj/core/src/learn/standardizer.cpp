#include "repoprint/learn/standardizer.hpp"

#include <cmath>

namespace repoprint::learn {

Standardizer Standardizer::fit(const Matrix& X) {
  Standardizer s;
  s.mean.assign(X.cols, 0.0);
  s.std.assign(X.cols, 1.0);
  if (X.rows == 0) return s;
  const double n = static_cast<double>(X.rows);
  for (std::size_t j = 0; j < X.cols; ++j) {
    bool constant = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      sum += X(i, j);
      constant = constant && X(i, j) == X(0, j);
    }
    if (constant) {
      s.mean[j] = X(0, j);
      continue;
    }
    const double mu = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) {
      const double d = X(i, j) - mu;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / n);
    s.mean[j] = mu;
    s.std[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::transform(std::span<const double> x) const {
  if (x.size() != mean.size()) {
    fail(Errc::DimensionMismatch, "standardizer expects " +
                                      std::to_string(mean.size()) +
                                      " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / std[j];
  return out;
}

Matrix Standardizer::transform(const Matrix& X) const {
  if (X.cols != mean.size()) {
    fail(Errc::DimensionMismatch, "standardizer column count mismatch");
  }
  Matrix out(X.rows, X.cols);
  for (std::size_t i = 0; i < X.rows; ++i) {
    for (std::size_t j = 0; j < X.cols; ++j) {
      out(i, j) = (X(i, j) - mean[j]) / std[j];
    }
  }
  return out;
}

}  // namespace repoprint::learn
