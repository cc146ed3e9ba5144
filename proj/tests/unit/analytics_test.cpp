#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "repoprint/analytics/distribution.hpp"
#include "repoprint/analytics/ztest.hpp"
#include "repoprint/core/error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace repoprint;
using namespace repoprint::analytics;
using repoprint::testing::kl_oracle;
using repoprint::testing::z_oracle;

namespace {

std::vector<double> random_dist(std::mt19937_64& rng, std::size_t n, bool sparse) {
  std::gamma_distribution<double> g(0.7, 1.0);
  std::vector<double> v(n);
  double s = 0;
  for (auto& x : v) {
    x = g(rng);
    if (sparse && rng() % 4 == 0) x = 0.0;
    s += x;
  }
  if (s == 0.0) {
    v[0] = 1.0;
    s = 1.0;
  }
  for (auto& x : v) x /= s;
  return v;
}

}  // namespace

TEST(Kl, MatchesHighPrecisionOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    auto p = random_dist(rng, n, trial % 3 == 0);
    auto q = random_dist(rng, n, trial % 5 == 0);
    EXPECT_NEAR(kl_divergence(p, q), kl_oracle(p, q), 1e-12) << "trial " << trial;
  }
}

TEST(Kl, IdentityNonNegativityAndMismatch) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_dist(rng, 13, trial % 2 == 0);
    auto q = random_dist(rng, 13, trial % 3 == 0);
    EXPECT_NEAR(kl_divergence(p, p), 0.0, 1e-15);
    EXPECT_GE(kl_divergence(p, q), 0.0);
  }
  std::vector<double> a = {0.5, 0.5}, b = {0.2, 0.3, 0.5};
  EXPECT_THROW(kl_divergence(a, b), Error);

  auto pd = ProbDist::from_counts({"x", "y"}, std::vector<double>{1, 3});
  auto qd = ProbDist::from_counts({"x", "z"}, std::vector<double>{1, 3});
  try {
    kl_divergence(pd, qd);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SupportMismatch);
  }
  EXPECT_DOUBLE_EQ(pd.prob("y"), 0.75);
}

TEST(Kl, ZeroCellIsFinite) {
  std::vector<double> p = {0.5, 0.5, 0.0}, q = {0.0, 0.5, 0.5};
  double kl = kl_divergence(p, q);
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_NEAR(kl, kl_oracle(p, q), 1e-12);
}

TEST(EventDistribution, PoolsAcrossRecordsInIndexOrder) {
  using repoprint::testing::repo_from_types;
  std::vector<RepoRecord> recs = {
      repo_from_types("a", {EventType::Create, EventType::Push, EventType::Watch}),
      repo_from_types("b", {EventType::Push, EventType::Push, EventType::Fork}),
  };
  auto with = event_type_distribution(recs, true);
  ASSERT_EQ(with.support.size(), 14u);
  EXPECT_EQ(with.support[3], "Watch");
  EXPECT_DOUBLE_EQ(with.prob("Push"), 3.0 / 6.0);
  auto without = event_type_distribution(recs, false);
  ASSERT_EQ(without.support.size(), 13u);
  EXPECT_DOUBLE_EQ(without.prob("Push"), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(without.prob("Watch"), 0.0);

  std::vector<RepoRecord> watch_only = {repo_from_types("w", {EventType::Watch})};
  EXPECT_THROW(event_type_distribution(watch_only, false), Error);
}

TEST(ZTest, MatchesClosedForm) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> na(3.0, 2.0), nb(2.5, 0.7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5 + rng() % 40), b(5 + rng() % 40);
    for (auto& x : a) x = na(rng);
    for (auto& x : b) x = nb(rng);
    auto r = two_sample_z_test(a, b);
    double z = z_oracle(a, b);
    EXPECT_NEAR(r.z, z, 1e-9);
    EXPECT_NEAR(r.p_two_sided, std::erfc(std::fabs(z) / std::sqrt(2.0)), 1e-9);
    EXPECT_EQ(r.n_a, a.size());
    // swapping sides negates z and keeps p
    auto s = two_sample_z_test(b, a);
    EXPECT_NEAR(s.z, -r.z, 1e-12);
    EXPECT_NEAR(s.p_two_sided, r.p_two_sided, 1e-12);
  }
}

TEST(ZTest, HandExample) {
  std::vector<double> a = {1, 2, 3, 4}, b = {2, 4, 6, 8};
  // means 2.5 and 5, variances 5/3 and 20/3
  const double z = -2.5 / std::sqrt((5.0 / 3.0 + 20.0 / 3.0) / 4.0);
  EXPECT_NEAR(two_sample_z_test(a, b).z, z, 1e-12);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(ZTest, DegenerateInputs) {
  std::vector<double> one = {1.0}, two = {1.0, 2.0};
  try {
    two_sample_z_test(one, two);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InsufficientSamples);
  }
  std::vector<double> c1 = {3, 3, 3}, c2 = {3, 3}, c3 = {4, 4};
  auto eq = two_sample_z_test(c1, c2);
  EXPECT_EQ(eq.z, 0.0);
  EXPECT_EQ(eq.p_two_sided, 1.0);
  try {
    two_sample_z_test(c1, c3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroVariance);
  }
}
