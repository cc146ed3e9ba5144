#pragma once

#include <span>
#include <string>
#include <vector>

#include "repoprint/learn/matrix.hpp"

namespace repoprint::learn {

/// Indices of the k nearest rows by Euclidean distance; equal distances keep
/// input order.
std::vector<std::size_t> nearest_neighbors(const Matrix& train,
                                           std::span<const double> query,
                                           std::size_t k);

/// Majority label among the k nearest rows. A vote tie goes to the tied label
/// whose member is nearest. Throws Error(EmptyTrainingSet), Error(KTooLarge),
/// Error(LengthMismatch) or Error(DimensionMismatch).
std::string knn_label(const Matrix& train, std::span<const std::string> labels,
                      std::span<const double> query, std::size_t k);

}  // namespace repoprint::learn
