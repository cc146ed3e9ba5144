#pragma once

#include <cstddef>
#include <span>

namespace repoprint::analytics {

struct ZTestResult {
  double z = 0.0;
  double p_two_sided = 1.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

/// Standard normal CDF via std::erfc.
double normal_cdf(double x);

/// Unpooled two-sample z-test of equal means:
///   z = (mean_a - mean_b) / sqrt(var_a / n_a + var_b / n_b)
/// with n-1 sample variances. When the standard error vanishes, equal means
/// give z = 0, p = 1 and unequal means throw Error(ZeroVariance).
/// Throws Error(InsufficientSamples) when either side has fewer than two
/// values.
ZTestResult two_sample_z_test(std::span<const double> a,
                              std::span<const double> b);

}  // namespace repoprint::analytics
