#pragma once

// Multistart Nelder-Mead over critical-point configurations of monic
// polynomials with P(0) = 0, evaluated at z = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smv/error.hpp"
#include "smv/meanvalue.hpp"
#include "smv/nelder_mead.hpp"
#include "smv/parallel.hpp"
#include "smv/polynomial.hpp"
#include "smv/random.hpp"

namespace smv {

enum class objective_kind { max_s, min_t, max_tischler_excess };

inline std::string_view to_string(objective_kind k) {
  switch (k) {
    case objective_kind::max_s: return "max-S";
    case objective_kind::min_t: return "min-T";
    case objective_kind::max_tischler_excess: return "max-Tischler-excess";
  }
  return "?";
}

inline std::optional<objective_kind> parse_objective(std::string_view s) {
  if (s == "max-S") return objective_kind::max_s;
  if (s == "min-T") return objective_kind::min_t;
  if (s == "max-Tischler-excess") return objective_kind::max_tischler_excess;
  return std::nullopt;
}

constexpr bool maximizes(objective_kind k) { return k != objective_kind::min_t; }

// Magnitude of the value returned for degenerate configurations.
inline constexpr double search_penalty = 1e6;

constexpr double penalty_for(objective_kind k) {
  return maximizes(k) ? -search_penalty : search_penalty;
}

struct search_config {
  int degree = 2;
  objective_kind objective = objective_kind::max_s;
  int starts = 64;
  std::uint64_t seed = 0;
  int max_evals = 20000;  // per start
  double simplex_scale = 0.25;
  double min_zeta_norm = 1e-4;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (degree < 2 || degree > polynomial::max_degree) {
      throw invalid_degree("search degree must lie in [2, 64]");
    }
    if (starts < 1) throw invalid_argument("starts must be >= 1");
    if (max_evals < 1) throw invalid_argument("max_evals must be >= 1");
    if (!(simplex_scale > 0) || !std::isfinite(simplex_scale)) {
      throw invalid_argument("simplex_scale must be positive");
    }
    if (!(min_zeta_norm > 0) || !(min_zeta_norm < 1)) {
      throw invalid_argument("min_zeta_norm must lie in (0, 1)");
    }
    if (threads < 0) throw invalid_argument("threads must be >= 0");
  }
};

struct search_result {
  double best_value = 0;
  std::vector<complex> best_zetas;
  polynomial best_polynomial{complex{0}, complex{1}};
  long long evaluations = 0;
  int best_start = 0;
  std::vector<double> per_start_bests;
  // (global evaluation index, incumbent value); starts are laid out in
  // index order.
  std::vector<std::pair<long long, double>> history;
  // Range of non-penalty objective values seen over all evaluations.
  double observed_min = std::numeric_limits<double>::infinity();
  double observed_max = -std::numeric_limits<double>::infinity();
};

/**
 * Scale by 1 / max |zeta| and rotate so the first zeta of maximal modulus
 * becomes exactly 1. This is an affine conjugation with b = 0, so the Q
 * values are unchanged.
 */
inline std::vector<complex> canonicalize(std::span<const complex> zetas) {
  if (zetas.empty()) throw invalid_argument("canonicalize needs critical points");
  double max_mod = 0;
  for (const auto& z : zetas) {
    if (!is_finite(z)) throw invalid_argument("critical points must be finite");
    max_mod = std::max(max_mod, std::abs(z));
  }
  if (max_mod == 0) throw invalid_argument("cannot canonicalize the zero vector");
  // Near-ties within rounding go to the lowest index.
  const double cutoff = max_mod * (1 - 8 * std::numeric_limits<double>::epsilon());
  std::size_t pivot = 0;
  while (std::abs(zetas[pivot]) < cutoff) ++pivot;
  const complex factor = complex{1} / zetas[pivot];
  std::vector<complex> out(zetas.size());
  for (std::size_t j = 0; j < zetas.size(); ++j) out[j] = zetas[j] * factor;
  out[pivot] = complex{1};
  return out;
}

inline std::vector<complex> canonicalize(const std::vector<complex>& zetas) {
  return canonicalize(std::span<const complex>(zetas));
}

/**
 * Objective at z = 0 for the monic P with P(0) = 0 whose critical points
 * are `zetas` (degree zetas.size() + 1). The critical points are known
 * exactly by construction, so no root solve is involved. Degenerate input
 * yields the penalty value, never an exception.
 */
inline double objective_eval(std::span<const complex> zetas, objective_kind kind,
                             double min_zeta_norm = 1e-4) {
  const int d = static_cast<int>(zetas.size()) + 1;
  if (d < 2 || d > polynomial::max_degree) return penalty_for(kind);
  for (const auto& z : zetas) {
    if (!is_finite(z) || !(std::abs(z) >= min_zeta_norm)) return penalty_for(kind);
  }
  try {
    const polynomial p = from_critical_points(zetas, d);
    double s = std::numeric_limits<double>::infinity();
    double t = 0;
    double tischler = std::numeric_limits<double>::infinity();
    for (const auto& zeta : zetas) {
      const complex q = q_value(p, complex{}, zeta);
      const double a = std::abs(q);
      s = std::min(s, a);
      t = std::max(t, a);
      tischler = std::min(tischler, std::abs(q - complex(0.5, 0)));
    }
    double v = 0;
    switch (kind) {
      case objective_kind::max_s: v = s; break;
      case objective_kind::min_t: v = t; break;
      case objective_kind::max_tischler_excess:
        v = tischler_bound(d) - tischler;
        break;
    }
    return std::isfinite(v) ? v : penalty_for(kind);
  } catch (const error&) {
    return penalty_for(kind);
  }
}

inline double objective_eval(const std::vector<complex>& zetas,
                             objective_kind kind, double min_zeta_norm = 1e-4) {
  return objective_eval(std::span<const complex>(zetas), kind, min_zeta_norm);
}

namespace detail {

inline std::vector<complex> unpack_zetas(const std::vector<double>& x) {
  std::vector<complex> z(x.size() / 2);
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
  return z;
}

struct start_outcome {
  nelder_mead_result nm;
  double observed_min = std::numeric_limits<double>::infinity();
  double observed_max = -std::numeric_limits<double>::infinity();
};

}  // namespace detail

/**
 * Deterministic given (seed, cfg): start s draws its zetas uniformly from
 * the annulus min_zeta_norm <= |zeta| <= 1 using stream derive_seed(seed, s).
 */
inline search_result run_search(const search_config& cfg) {
  cfg.validate();
  const int d = cfg.degree;
  const double sign = maximizes(cfg.objective) ? -1.0 : 1.0;

  nelder_mead_options nm_opt;
  nm_opt.initial_scale = cfg.simplex_scale;
  nm_opt.max_evaluations = cfg.max_evals;

  std::vector<detail::start_outcome> outcomes(cfg.starts);
  parallel_for(cfg.starts, cfg.threads, [&](int s) {
    auto rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(s));
    std::vector<double> x0;
    x0.reserve(2 * (d - 1));
    for (int j = 0; j < d - 1; ++j) {
      const complex z = uniform_annulus(rng, cfg.min_zeta_norm, 1.0);
      x0.push_back(z.real());
      x0.push_back(z.imag());
    }
    auto& out = outcomes[s];
    auto f = [&](const std::vector<double>& x) {
      const auto zetas = detail::unpack_zetas(x);
      double v = penalty_for(cfg.objective);
      try {
        v = objective_eval(canonicalize(zetas), cfg.objective, cfg.min_zeta_norm);
      } catch (const error&) {
      }
      if (v != penalty_for(cfg.objective)) {
        out.observed_min = std::min(out.observed_min, v);
        out.observed_max = std::max(out.observed_max, v);
      }
      return sign * v;
    };
    out.nm = nelder_mead(f, std::move(x0), nm_opt);
  });

  search_result res;
  double incumbent = std::numeric_limits<double>::infinity();
  long long offset = 0;
  for (int s = 0; s < cfg.starts; ++s) {
    const auto& o = outcomes[s];
    res.per_start_bests.push_back(sign * o.nm.value);
    for (const auto& [idx, v] : o.nm.history) {
      if (v < incumbent) {
        incumbent = v;
        res.history.emplace_back(offset + idx, sign * v);
      }
    }
    offset += o.nm.evaluations;
    res.observed_min = std::min(res.observed_min, o.observed_min);
    res.observed_max = std::max(res.observed_max, o.observed_max);
    if (o.nm.value < outcomes[res.best_start].nm.value) res.best_start = s;
  }
  res.evaluations = offset;

  const auto& best = outcomes[res.best_start].nm;
  res.best_value = sign * best.value;
  res.best_zetas = canonicalize(detail::unpack_zetas(best.x));
  res.best_polynomial = from_critical_points(res.best_zetas, d);
  return res;
}

}  // namespace smv
