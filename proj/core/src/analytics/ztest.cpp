#include "repoprint/analytics/ztest.hpp"

#include <algorithm>
#include <cmath>

#include "repoprint/core/error.hpp"

namespace repoprint::analytics {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(std::span<const double> xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(xs.size() - 1)};
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

ZTestResult two_sample_z_test(std::span<const double> a,
                              std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    fail(Errc::InsufficientSamples, "z-test needs at least two values per sample");
  }
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  ZTestResult r;
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;
  r.n_a = a.size();
  r.n_b = b.size();

  const double se2 = ma.var / static_cast<double>(a.size()) +
                     mb.var / static_cast<double>(b.size());
  const double scale = std::max({std::abs(ma.mean), std::abs(mb.mean), 1.0});
  const double guard = 1e-12 * scale;
  if (se2 <= guard * guard) {
    if (std::abs(ma.mean - mb.mean) <= guard) return r;
    fail(Errc::ZeroVariance, "both samples are constant with different means");
  }
  r.z = (ma.mean - mb.mean) / std::sqrt(se2);
  r.p_two_sided = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  return r;
}

}  // namespace repoprint::analytics
