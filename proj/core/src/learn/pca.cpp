#include "repoprint/learn/pca.hpp"

#include <cmath>

#include "repoprint/core/random.hpp"

namespace repoprint::learn {
namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Dominant eigenpair of the symmetric matrix C (d x d).
std::pair<double, std::vector<double>> power_iterate(const Matrix& C,
                                                     const PcaConfig& cfg,
                                                     Rng& rng) {
  const std::size_t d = C.rows;
  std::vector<double> v(d), w(d);
  for (auto& x : v) x = standard_normal(rng);
  double nv = norm(v);
  for (auto& x : v) x /= nv;
  double lambda = 0.0;
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += C(i, j) * v[j];
      w[i] = s;
    }
    const double nw = norm(w);
    if (nw == 0.0) return {0.0, v};
    double delta = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      w[i] /= nw;
      delta = std::max(delta, std::abs(w[i] - v[i]));
    }
    v.swap(w);
    lambda = nw;
    if (delta < cfg.tolerance) break;
  }
  // Rayleigh quotient is a better estimate than the last norm
  double rq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += C(i, j) * v[j];
    rq += v[i] * s;
  }
  (void)lambda;
  return {rq, v};
}

// Deterministic sign: largest-magnitude entry positive.
void orient(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  if (v[arg] < 0.0) {
    for (auto& x : v) x = -x;
  }
}

}  // namespace

PcaProjection pca_2d(const Matrix& X, const PcaConfig& cfg) {
  if (X.rows < 3) fail(Errc::InsufficientSamples, "PCA needs at least 3 points");
  if (X.cols < 2) fail(Errc::DimensionMismatch, "PCA needs at least 2 dimensions");
  const std::size_t n = X.rows, d = X.cols;
  PcaProjection p;
  p.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) p.mean[j] += X(i, j);
  }
  for (auto& m : p.mean) m /= static_cast<double>(n);
  Matrix C(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double xa = X(i, a) - p.mean[a];
      if (xa == 0.0) continue;
      for (std::size_t b = 0; b < d; ++b) C(a, b) += xa * (X(i, b) - p.mean[b]);
    }
  }
  for (auto& c : C.data) c /= static_cast<double>(n - 1);
  double trace = 0.0;
  for (std::size_t a = 0; a < d; ++a) trace += C(a, a);
  const double floor = 1e-12 * std::max(trace, 1e-300);

  Rng rng(mix_seed(cfg.seed, 0x706361));
  for (std::size_t c = 0; c < 2; ++c) {
    auto [lambda, v] = power_iterate(C, cfg, rng);
    if (!(lambda > floor)) {
      p.degenerate = true;
      p.components[c].assign(d, 0.0);
      p.explained_variance[c] = 0.0;
      continue;
    }
    if (c == 1) {
      // re-orthogonalize against the first axis to remove drift
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += v[j] * p.components[0][j];
      for (std::size_t j = 0; j < d; ++j) v[j] -= dot * p.components[0][j];
      const double nv = norm(v);
      for (auto& x : v) x /= nv;
    }
    orient(v);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) C(a, b) -= lambda * v[a] * v[b];
    }
    p.components[c] = std::move(v);
    p.explained_variance[c] = lambda;
  }
  p.coords = Matrix(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    auto xy = project(p, X.row(i));
    p.coords(i, 0) = xy[0];
    p.coords(i, 1) = xy[1];
  }
  return p;
}

std::array<double, 2> project(const PcaProjection& p, std::span<const double> x) {
  if (x.size() != p.mean.size()) {
    fail(Errc::DimensionMismatch, "point dimension differs from the projection");
  }
  std::array<double, 2> out{};
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      out[c] += (x[j] - p.mean[j]) * p.components[c][j];
    }
  }
  return out;
}

std::vector<double> back_project(const PcaProjection& p,
                                 const std::array<double, 2>& coords) {
  std::vector<double> x = p.mean;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] += coords[c] * p.components[c][j];
    }
  }
  return x;
}

}  // namespace repoprint::learn
