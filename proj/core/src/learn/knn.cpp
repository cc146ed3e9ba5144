#include "repoprint/learn/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace repoprint::learn {

std::vector<std::size_t> nearest_neighbors(const Matrix& train,
                                           std::span<const double> query,
                                           std::size_t k) {
  if (train.rows == 0) fail(Errc::EmptyTrainingSet, "no training points");
  if (k == 0 || k > train.rows) {
    fail(Errc::KTooLarge, "k = " + std::to_string(k) + " with " +
                              std::to_string(train.rows) + " training points");
  }
  if (query.size() != train.cols) {
    fail(Errc::DimensionMismatch, "query dimension differs from training data");
  }
  std::vector<double> dist(train.rows);
  for (std::size_t i = 0; i < train.rows; ++i) {
    auto r = train.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double d = r[j] - query[j];
      s += d * d;
    }
    dist[i] = s;
  }
  std::vector<std::size_t> idx(train.rows);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k),
                    idx.end(), [&](std::size_t a, std::size_t b) {
                      return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
                    });
  idx.resize(k);
  return idx;
}

std::string knn_label(const Matrix& train, std::span<const std::string> labels,
                      std::span<const double> query, std::size_t k) {
  if (labels.size() != train.rows) {
    fail(Errc::LengthMismatch, "labels and training rows differ in length");
  }
  const auto nn = nearest_neighbors(train, query, k);
  std::map<std::string_view, std::size_t> votes;
  std::size_t best = 0;
  for (auto i : nn) best = std::max(best, ++votes[labels[i]]);
  for (auto i : nn) {
    if (votes[labels[i]] == best) return labels[i];
  }
  return labels[nn.front()];
}

}  // namespace repoprint::learn
