#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "smv/meanvalue.hpp"
#include "smv/named.hpp"
#include "smv/random.hpp"

using smv::complex;
using smv::polynomial;

namespace {

polynomial random_poly(smv::splitmix64& rng, int d) {
  std::vector<complex> c(d + 1);
  for (auto& v : c) v = smv::complex_gaussian(rng);
  return polynomial(c);
}

std::vector<complex> coeffs_of(const polynomial& p) {
  return {p.coefficients().begin(), p.coefficients().end()};
}

smv::root_set exact_roots(std::vector<complex> zs) {
  smv::root_set rs;
  rs.degree = static_cast<int>(zs.size());
  rs.converged = true;
  for (const auto& z : zs) rs.roots.push_back({z, 1, 0, 0});
  return rs;
}

}  // namespace

TEST(MeanValue, QValueExamples) {
  for (int d = 2; d <= 12; ++d) {
    const complex q0 = smv::q_value(smv::smale_extremal(d), complex{}, complex{1});
    EXPECT_NEAR(q0.real(), (d - 1.0) / d, 1e-15);
    EXPECT_EQ(q0.imag(), 0.0);
    const complex qs = smv::q_value(smv::dual_extremal(d), complex{}, complex{-1});
    EXPECT_NEAR(qs.real(), 1.0 / d, 1e-15);
  }
  const polynomial quad{complex{0}, complex{-2}, complex{1}};
  EXPECT_EQ(smv::q_value(quad, complex{}, complex{1}), complex(0.5, 0));
}

TEST(MeanValue, QValueMatchesDefinition) {
  smv::splitmix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_poly(rng, 2 + trial % 9);
    const complex z = smv::complex_gaussian(rng);
    const complex zeta = smv::complex_gaussian(rng) * 2.0;
    const complex want = oracle::q_direct(coeffs_of(p), z, zeta);
    EXPECT_LE(std::abs(smv::q_value(p, z, zeta) - want), 1e-10 * (1 + std::abs(want)));
  }
}

TEST(MeanValue, QValueErrors) {
  const polynomial z2{complex{0}, complex{0}, complex{1}};
  EXPECT_THROW(smv::q_value(z2, complex{}, complex{1}), smv::critical_point_error);
  EXPECT_THROW(smv::q_value(z2, complex{1}, complex{1}), smv::coincident_points_error);
}

TEST(MeanValue, DualBoundConstant) {
  EXPECT_EQ(smv::dual_bound(5), 1.0 / 5120.0);
  EXPECT_EQ(smv::dual_bound(2), 1.0 / 32.0);
  EXPECT_EQ(smv::tischler_bound(4), 0.25);
}

TEST(MeanValue, AnalyzeDualExtremal) {
  const auto rep = smv::analyze(smv::dual_extremal(5), complex{});
  EXPECT_NEAR(rep.s_value, 0.2, 1e-12);
  EXPECT_NEAR(rep.t_value, 0.2, 1e-12);
  EXPECT_NEAR(rep.tischler_value, 0.3, 1e-12);
  EXPECT_NEAR(rep.dual_margin, 0.2 - 1.0 / 5120, 1e-12);
  EXPECT_GT(rep.dual_margin, 0.0);
  ASSERT_EQ(rep.q_values.size(), 1u);
  EXPECT_EQ(rep.q_values[0].multiplicity, 4);
  ASSERT_TRUE(rep.proof.has_value());
  EXPECT_NEAR(rep.proof->R, 1.0, 1e-12);
  EXPECT_NEAR(rep.proof->min_ratio, 1.0, 1e-12);
  EXPECT_NEAR(rep.proof->lower_bound, 0.2, 1e-12);
  EXPECT_LE(rep.proof->c1_residual, 1e-12);
}

TEST(MeanValue, AnalyzeOddCubic) {
  const polynomial cubic{complex{0}, complex{-3}, complex{0}, complex{1}};
  const auto rep = smv::analyze(cubic, complex{});
  ASSERT_EQ(rep.q_values.size(), 2u);
  for (const auto& e : rep.q_values) EXPECT_NEAR(e.abs_q, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rep.s_value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rep.t_value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rep.smale_margin, 10.0 / 3.0, 1e-15);
  ASSERT_TRUE(rep.proof.has_value());
  EXPECT_NEAR(rep.proof->R, std::cbrt(2.0), 1e-14);
  EXPECT_EQ(rep.proof->ratios.size(), 2u);
}

TEST(MeanValue, AnalyzeAtCriticalPointFails) {
  const polynomial z2{complex{0}, complex{0}, complex{1}};
  EXPECT_THROW(smv::analyze(z2, complex{}), smv::critical_point_error);
}

TEST(MeanValue, AnalyzeRequiresConvergedMatchingSet) {
  const auto p = smv::smale_extremal(4);
  auto crit = smv::critical_points(p);
  crit.converged = false;
  EXPECT_THROW(smv::analyze(p, complex{}, crit), smv::not_converged_error);
  const auto wrong = exact_roots({complex{1}});
  EXPECT_THROW(smv::analyze(p, complex{}, wrong), smv::invalid_argument);
}

TEST(MeanValue, TiesGoToLowestSortedIndex) {
  const polynomial cubic{complex{0}, complex{-3}, complex{0}, complex{1}};
  const auto rep = smv::analyze(cubic, complex{}, exact_roots({complex{1}, complex{-1}}));
  EXPECT_EQ(rep.q_values[0].zeta, complex(-1));
  EXPECT_EQ(rep.q_values[0].abs_q, rep.q_values[1].abs_q);
  EXPECT_EQ(rep.s_argmin, 0);
  EXPECT_EQ(rep.t_argmax, 0);
}

TEST(MeanValue, ProofOnlyInNormalForm) {
  const polynomial shifted{complex{1}, complex{-3}, complex{0}, complex{1}};
  EXPECT_FALSE(smv::analyze(shifted, complex{}).proof.has_value());
  const auto p0 = smv::smale_extremal(4);
  EXPECT_FALSE(smv::analyze(p0, complex(0.1, 0)).proof.has_value());
  EXPECT_TRUE(smv::analyze(p0, complex{}).proof.has_value());
}

TEST(MeanValue, TischlerExamples) {
  const polynomial quad{complex{0}, complex{-2}, complex{1}};
  const auto a = smv::analyze(quad, complex{});
  EXPECT_EQ(a.tischler_value, 0.0);
  EXPECT_EQ(a.tischler_bound, 0.0);
  EXPECT_EQ(smv::tischler_value(a), a.tischler_value);

  // |1/d - 1/2| = 1/2 - 1/d for every d >= 2.
  for (int d = 2; d <= 10; ++d) {
    const auto b = smv::analyze(smv::dual_extremal(d), complex{});
    EXPECT_NEAR(b.tischler_value, b.tischler_bound, 1e-12) << d;
  }
  const auto c = smv::analyze(smv::smale_extremal(5), complex{});
  EXPECT_NEAR(c.tischler_value, 0.3, 1e-12);
  EXPECT_LE(c.tischler_value, c.tischler_bound + 1e-12);
}

TEST(MeanValue, AffineInvariance) {
  smv::splitmix64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 7;
    const auto p = random_poly(rng, d);
    const complex z = smv::complex_gaussian(rng);
    smv::affine_maps m{smv::uniform_annulus(rng, 0.5, 2), smv::complex_gaussian(rng),
                       smv::uniform_annulus(rng, 0.5, 2), smv::complex_gaussian(rng)};
    const auto conj = smv::affine_conjugate(p, m);
    const auto rep = smv::analyze(p, z);
    const auto rep_t = smv::analyze(conj, m.pull_back(z));
    ASSERT_EQ(rep.q_values.size(), rep_t.q_values.size());
    for (const auto& e : rep.q_values) {
      // Match by the critical point map zeta = a zeta~ + b.
      const auto it = std::min_element(rep_t.q_values.begin(), rep_t.q_values.end(),
                                       [&](const auto& x, const auto& y) {
                                         return std::abs(m.push_forward(x.zeta) - e.zeta) <
                                                std::abs(m.push_forward(y.zeta) - e.zeta);
                                       });
      EXPECT_LE(std::abs(it->q - e.q), 1e-9 * std::abs(e.q)) << trial;
    }
    EXPECT_NEAR(rep.s_value, rep_t.s_value, 1e-9 * rep.s_value);
    EXPECT_NEAR(rep.t_value, rep_t.t_value, 1e-9 * rep.t_value);
    EXPECT_NEAR(rep.tischler_value, rep_t.tischler_value, 1e-9);
  }
}

TEST(MeanValue, BoundsHoldOnRandomInstances) {
  smv::splitmix64 rng(33);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 2 + trial % 9;
    const auto p = random_poly(rng, d);
    const auto rep = smv::analyze(p, smv::complex_gaussian(rng));
    EXPECT_LE(rep.s_value, 4 + 1e-8);
    EXPECT_GE(rep.t_value, smv::dual_bound(d) - 1e-12);
    EXPECT_LE(rep.s_value, rep.t_value);
    EXPECT_EQ(rep.smale_margin, 4 - rep.s_value);
  }
}

TEST(MeanValue, ProofChainOnNormalizedInstances) {
  smv::splitmix64 rng(34);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 2 + trial % 9;
    const auto n = smv::normalize_for_theorem(random_poly(rng, d), smv::complex_gaussian(rng));
    const auto rep = smv::analyze(n.poly, complex{});
    ASSERT_TRUE(rep.proof.has_value());
    const auto& pq = *rep.proof;
    EXPECT_GE(pq.min_ratio, 0.25 - 1e-6);
    EXPECT_LE(pq.c1_residual, 1e-6);
    EXPECT_GE(rep.t_value, pq.lower_bound * (1 - 1e-9));
    EXPECT_GE(pq.lower_bound, smv::dual_bound(d) * (1 - 1e-9));
    // R is the largest critical value modulus to the power 1/d.
    double max_abs = 0;
    for (const auto& e : rep.q_values) max_abs = std::max(max_abs, std::abs(n.poly(e.zeta)));
    EXPECT_NEAR(std::pow(pq.R, d), max_abs, 1e-12 * max_abs);
  }
}
