#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "repoprint/learn/matrix.hpp"

namespace repoprint::learn {

struct PcaConfig {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 7;
};

struct PcaProjection {
  std::vector<double> mean;
  std::array<std::vector<double>, 2> components;
  std::array<double, 2> explained_variance{};
  Matrix coords;  // n x 2
  /// Set when the covariance has rank < 2; the missing axes are zero.
  bool degenerate = false;
};

/// Top-2 principal axes of the sample covariance by power iteration with
/// deflation. Throws Error(InsufficientSamples) or Error(DimensionMismatch).
PcaProjection pca_2d(const Matrix& X, const PcaConfig& cfg = {});

/// Coordinates of x on the two components.
std::array<double, 2> project(const PcaProjection& p, std::span<const double> x);
/// mean + c1 * v1 + c2 * v2.
std::vector<double> back_project(const PcaProjection& p,
                                 const std::array<double, 2>& coords);

}  // namespace repoprint::learn
