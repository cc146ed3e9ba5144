#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace repoprint::seqembed {

/// Dense row-major matrix of doubles; vectors are 1 x n.
struct Tensor {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }

  std::size_t size() const noexcept { return data.size(); }
  bool same_shape(const Tensor& o) const noexcept {
    return rows == o.rows && cols == o.cols;
  }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

}  // namespace repoprint::seqembed
