#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "repoprint/core/error.hpp"

namespace repoprint::learn {

/// Row-major n x d design matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rs) {
    Matrix m;
    if (rs.empty()) return m;
    m = Matrix(rs.size(), rs.front().size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].size() != m.cols) {
        fail(Errc::DimensionMismatch, "ragged rows in matrix");
      }
      std::copy(rs[i].begin(), rs[i].end(), m.data.begin() + i * m.cols);
    }
    return m;
  }

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }

  /// Copies the given rows, in order.
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto src = row(idx[i]);
      std::copy(src.begin(), src.end(), m.data.begin() + i * cols);
    }
    return m;
  }

  /// Copies the given columns, in order.
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix m(rows, idx.size());
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
    }
    return m;
  }
};

}  // namespace repoprint::learn
