#pragma once

// Monte Carlo verification campaigns over random polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "smv/error.hpp"
#include "smv/levelset.hpp"
#include "smv/meanvalue.hpp"
#include "smv/parallel.hpp"
#include "smv/polynomial.hpp"
#include "smv/random.hpp"
#include "smv/roots.hpp"

namespace smv {

enum class coefficient_distribution { unit_gaussian_complex, unit_disk_uniform };
enum class point_policy { origin_after_normalization, random_non_critical };

inline std::string_view to_string(coefficient_distribution d) {
  return d == coefficient_distribution::unit_gaussian_complex ? "unit-gaussian-complex"
                                                              : "unit-disk-uniform";
}
inline std::string_view to_string(point_policy p) {
  return p == point_policy::origin_after_normalization ? "origin-after-normalization"
                                                       : "random-non-critical";
}
inline std::optional<coefficient_distribution> parse_distribution(std::string_view s) {
  if (s == "unit-gaussian-complex") return coefficient_distribution::unit_gaussian_complex;
  if (s == "unit-disk-uniform") return coefficient_distribution::unit_disk_uniform;
  return std::nullopt;
}
inline std::optional<point_policy> parse_point_policy(std::string_view s) {
  if (s == "origin-after-normalization") return point_policy::origin_after_normalization;
  if (s == "random-non-critical") return point_policy::random_non_critical;
  return std::nullopt;
}

// Slack applied before an observation counts as a violation.
struct campaign_tolerances {
  double smale = 1e-8;      // S <= 4 + smale
  double dual = 1e-12;      // T >= 1/(d 4^d) - dual
  double tischler = 1e-8;   // min |Q - 1/2| <= 1/2 - 1/d + tischler
  double proof = 1e-6;      // c1 residual <= proof, min ratio >= 1/4 - proof
};

struct campaign_config {
  std::vector<int> degrees{2, 3, 4, 5, 6, 7, 8};
  int samples_per_degree = 1000;
  coefficient_distribution distribution = coefficient_distribution::unit_gaussian_complex;
  std::uint64_t seed = 0;
  point_policy policy = point_policy::origin_after_normalization;
  solver_config solver;
  campaign_tolerances tolerances;
  int threads = 0;

  void validate() const {
    if (degrees.empty()) throw invalid_argument("campaign needs at least one degree");
    for (int d : degrees) {
      if (d < 2 || d > polynomial::max_degree) {
        throw invalid_degree("campaign degrees must lie in [2, 64]");
      }
    }
    if (samples_per_degree < 1) throw invalid_argument("samples must be >= 1");
  }
};

enum class sample_status { ok, skipped_nonconverged, skipped_critical };

struct sample_row {
  int degree = 0;
  int sample = 0;
  sample_status status = sample_status::ok;
  complex z{};  // evaluation point before normalization
  double s_value = 0, t_value = 0, tischler_value = 0, dual_margin = 0;
  double min_ratio = 0, c1_residual = 0, proof_lower_bound = 0;
  bool containment = false;
};

struct degree_summary {
  int degree = 0;
  int count = 0;
  int violations_smale = 0;
  int violations_dual = 0;
  double min_dual_margin = std::numeric_limits<double>::infinity();
  double max_s = 0;
  double min_t = std::numeric_limits<double>::infinity();
  int tischler_violations = 0;
  double max_tischler_excess = -std::numeric_limits<double>::infinity();
  int skipped_nonconverged = 0;
  int skipped_critical = 0;
  int proof_violations = 0;
  double max_c1_residual = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  int containment_failures = 0;
};

struct campaign_summary {
  std::vector<degree_summary> per_degree;

  // Exit criterion: neither theorem-backed bound is ever violated.
  [[nodiscard]] bool bounds_hold() const {
    return std::all_of(per_degree.begin(), per_degree.end(), [](const auto& s) {
      return s.violations_smale == 0 && s.violations_dual == 0;
    });
  }
};

inline complex draw_coefficient(splitmix64& rng, coefficient_distribution dist) {
  return dist == coefficient_distribution::unit_gaussian_complex ? complex_gaussian(rng)
                                                                 : uniform_disk(rng);
}

inline polynomial random_polynomial(splitmix64& rng, int d,
                                    coefficient_distribution dist) {
  std::vector<complex> c(d + 1);
  for (auto& v : c) v = draw_coefficient(rng, dist);
  while (c.back() == complex{}) c.back() = draw_coefficient(rng, dist);
  return polynomial(std::move(c));
}

// One campaign sample; deterministic in (seed, degree, index).
inline sample_row run_sample(const campaign_config& cfg, int d, int index) {
  sample_row row;
  row.degree = d;
  row.sample = index;
  auto rng = derive_stream(cfg.seed, (static_cast<std::uint64_t>(d) << 32) |
                                         static_cast<std::uint32_t>(index));
  const polynomial p = random_polynomial(rng, d, cfg.distribution);

  if (cfg.policy == point_policy::random_non_critical) {
    bool found = false;
    const double floor = critical_threshold(p);
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      row.z = complex_gaussian(rng);
      found = std::abs(evaluate_with_derivative(p, row.z).second) >= floor;
    }
    if (!found) {
      row.status = sample_status::skipped_critical;
      return row;
    }
  }

  const auto normal = normalize_for_theorem(p, row.z);
  const root_set crit = critical_points(normal.poly, cfg.solver);
  if (!crit.converged) {
    row.status = sample_status::skipped_nonconverged;
    return row;
  }
  try {
    const auto rep = analyze(normal.poly, complex{}, crit);
    const auto& proof = rep.proof.value();
    row.s_value = rep.s_value;
    row.t_value = rep.t_value;
    row.tischler_value = rep.tischler_value;
    row.dual_margin = rep.dual_margin;
    row.min_ratio = proof.min_ratio;
    row.c1_residual = proof.c1_residual;
    row.proof_lower_bound = proof.lower_bound;
  } catch (const critical_point_error&) {
    row.status = sample_status::skipped_critical;
    return row;
  } catch (const coincident_points_error&) {
    row.status = sample_status::skipped_critical;
    return row;
  }
  const auto threshold = threshold_from(normal.poly, crit);
  row.containment = containment_check(normal.poly, crit, threshold.value).all_inside;
  return row;
}

inline campaign_summary run_campaign(const campaign_config& cfg,
                                     std::vector<sample_row>* rows = nullptr) {
  cfg.validate();
  campaign_summary summary;
  for (int d : cfg.degrees) {
    std::vector<sample_row> batch(cfg.samples_per_degree);
    parallel_for(cfg.samples_per_degree, cfg.threads,
                 [&](int i) { batch[i] = run_sample(cfg, d, i); });

    degree_summary s;
    s.degree = d;
    const double bound = dual_bound(d);
    const auto& tol = cfg.tolerances;
    for (const auto& r : batch) {
      if (r.status == sample_status::skipped_nonconverged) {
        ++s.skipped_nonconverged;
        continue;
      }
      if (r.status == sample_status::skipped_critical) {
        ++s.skipped_critical;
        continue;
      }
      ++s.count;
      if (r.s_value > 4 + tol.smale) ++s.violations_smale;
      if (r.t_value < bound - tol.dual) ++s.violations_dual;
      const double excess = r.tischler_value - tischler_bound(d);
      if (excess > tol.tischler) ++s.tischler_violations;
      if (r.c1_residual > tol.proof || r.min_ratio < 0.25 - tol.proof) {
        ++s.proof_violations;
      }
      if (!r.containment) ++s.containment_failures;
      s.min_dual_margin = std::min(s.min_dual_margin, r.dual_margin);
      s.max_s = std::max(s.max_s, r.s_value);
      s.min_t = std::min(s.min_t, r.t_value);
      s.max_tischler_excess = std::max(s.max_tischler_excess, excess);
      s.max_c1_residual = std::max(s.max_c1_residual, r.c1_residual);
      s.min_ratio = std::min(s.min_ratio, r.min_ratio);
    }
    summary.per_degree.push_back(s);
    if (rows) rows->insert(rows->end(), batch.begin(), batch.end());
  }
  return summary;
}

}  // namespace smv
