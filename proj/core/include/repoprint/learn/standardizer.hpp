#pragma once

#include <span>
#include <vector>

#include "repoprint/learn/matrix.hpp"

namespace repoprint::learn {

/// Per-column z-scoring with population statistics. A column whose values
/// are all identical keeps std = 1, so it maps to exactly 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;

  static Standardizer fit(const Matrix& X);

  std::size_t dim() const noexcept { return mean.size(); }
  /// Throws Error(DimensionMismatch).
  std::vector<double> transform(std::span<const double> x) const;
  Matrix transform(const Matrix& X) const;
};

}  // namespace repoprint::learn
