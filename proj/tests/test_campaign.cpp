#include <gtest/gtest.h>

#include <vector>

#include "smv/campaign.hpp"

TEST(Campaign, NamesRoundTrip) {
  using smv::coefficient_distribution;
  using smv::point_policy;
  for (auto d : {coefficient_distribution::unit_gaussian_complex,
                 coefficient_distribution::unit_disk_uniform}) {
    EXPECT_EQ(smv::parse_distribution(smv::to_string(d)), d);
  }
  for (auto p : {point_policy::origin_after_normalization, point_policy::random_non_critical}) {
    EXPECT_EQ(smv::parse_point_policy(smv::to_string(p)), p);
  }
  EXPECT_FALSE(smv::parse_distribution("gaussian").has_value());
}

TEST(Campaign, ConfigValidation) {
  smv::campaign_config c;
  c.degrees = {};
  EXPECT_THROW(smv::run_campaign(c), smv::invalid_argument);
  c.degrees = {1};
  EXPECT_THROW(smv::run_campaign(c), smv::invalid_degree);
  c.degrees = {65};
  EXPECT_THROW(smv::run_campaign(c), smv::invalid_degree);
  c.degrees = {3};
  c.samples_per_degree = 0;
  EXPECT_THROW(smv::run_campaign(c), smv::invalid_argument);
}

TEST(Campaign, SmallGaussianCampaignHasNoViolations) {
  smv::campaign_config c;
  c.degrees = {2, 3, 4, 5, 6};
  c.samples_per_degree = 400;
  c.seed = 3;
  std::vector<smv::sample_row> rows;
  const auto s = smv::run_campaign(c, &rows);
  EXPECT_TRUE(s.bounds_hold());
  ASSERT_EQ(s.per_degree.size(), 5u);
  EXPECT_EQ(rows.size(), 5u * 400u);
  for (const auto& d : s.per_degree) {
    EXPECT_EQ(d.count + d.skipped_critical + d.skipped_nonconverged, 400);
    EXPECT_EQ(d.violations_smale, 0);
    EXPECT_EQ(d.violations_dual, 0);
    EXPECT_EQ(d.proof_violations, 0);
    EXPECT_EQ(d.containment_failures, 0);
    EXPECT_LE(d.max_s, 4 + 1e-8);
    EXPECT_GE(d.min_ratio, 0.25 - 1e-6);
    if (d.degree <= 4) {
      EXPECT_EQ(d.tischler_violations, 0);
    }
  }
}

TEST(Campaign, RandomPointPolicyAndDiskDistribution) {
  smv::campaign_config c;
  c.degrees = {3, 7};
  c.samples_per_degree = 200;
  c.policy = smv::point_policy::random_non_critical;
  c.distribution = smv::coefficient_distribution::unit_disk_uniform;
  std::vector<smv::sample_row> rows;
  const auto s = smv::run_campaign(c, &rows);
  EXPECT_TRUE(s.bounds_hold());
  bool moved = false;
  for (const auto& r : rows) moved = moved || r.z != smv::complex{};
  EXPECT_TRUE(moved);
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  smv::campaign_config c;
  c.degrees = {4, 5};
  c.samples_per_degree = 150;
  c.seed = 77;
  c.threads = 1;
  std::vector<smv::sample_row> a, b;
  smv::run_campaign(c, &a);
  c.threads = 4;
  smv::run_campaign(c, &b);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].s_value, b[i].s_value);
    EXPECT_EQ(a[i].t_value, b[i].t_value);
    EXPECT_EQ(a[i].c1_residual, b[i].c1_residual);
  }
  c.seed = 78;
  std::vector<smv::sample_row> other;
  smv::run_campaign(c, &other);
  EXPECT_NE(other[0].t_value, a[0].t_value);
}

TEST(Campaign, ViolationsAreCounted) {
  smv::campaign_config c;
  c.degrees = {3};
  c.samples_per_degree = 50;
  // Demanding T >= bound + 1e300 must flag every sample.
  c.tolerances.dual = -1e300;
  const auto s = smv::run_campaign(c);
  EXPECT_EQ(s.per_degree[0].violations_dual, s.per_degree[0].count);
  EXPECT_FALSE(s.bounds_hold());
}
