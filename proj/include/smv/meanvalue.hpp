#pragma once

// Mean-value quotients Q(P, z, zeta) and the derived quantities S, T, the
// Tischler distance and the bound margins.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "smv/error.hpp"
#include "smv/polynomial.hpp"
#include "smv/roots.hpp"

namespace smv {

// |P'(z)| below this means z is treated as a critical point.
template <std::floating_point Real>
Real critical_threshold(const basic_polynomial<Real>& p) {
  return Real(1e-12) * (Real(1) + p.coefficient_scale());
}

// 1 / (d 4^d); the power of four is exact.
inline double dual_bound(int d) {
  return 1.0 / (static_cast<double>(d) * std::ldexp(1.0, 2 * d));
}

inline double tischler_bound(int d) { return 0.5 - 1.0 / d; }

/// (P(z) - P(zeta)) / ((z - zeta) P'(z))
template <std::floating_point Real>
std::complex<Real> q_value(const basic_polynomial<Real>& p,
                           const std::complex<Real>& z,
                           const std::complex<Real>& zeta) {
  const auto dpz = evaluate_with_derivative(p, z).second;
  if (std::abs(dpz) < critical_threshold(p)) {
    throw critical_point_error("z is a critical point of P (|P'(z)| = " +
                               std::to_string(std::abs(dpz)) + ")");
  }
  const std::complex<Real> gap = z - zeta;
  if (std::abs(gap) <= Real(1e-14) * (Real(1) + std::abs(z))) {
    throw coincident_points_error("z and zeta coincide");
  }
  // (P(z) - P(zeta)) / (z - zeta) is the quotient of P by (x - zeta) at z;
  // evaluating it directly avoids cancelling two nearly equal values.
  const auto& c = p.coefficients();
  const int n = p.degree();
  std::complex<Real> b = c[n];
  std::complex<Real> quotient = b;
  for (int k = n - 1; k >= 1; --k) {
    b = c[k] + zeta * b;
    quotient = quotient * z + b;
  }
  return quotient / dpz;
}

template <std::floating_point Real>
struct basic_q_entry {
  std::complex<Real> zeta;
  std::complex<Real> q;
  Real abs_q = 0;
  int multiplicity = 1;
};

// Quantities from the Koebe-based lower bound argument, normal form only.
template <std::floating_point Real>
struct basic_proof_quantities {
  Real R = 0;                 // max_j |P(zeta_j)|^(1/d)
  int R_argmax = 0;           // index k attaining R
  std::vector<Real> ratios;   // R / |zeta_j|, aligned with q_values
  Real min_ratio = 0;
  Real c1_residual = 0;
  // R^d / (|zeta_k| d prod_j |zeta_j|), never above T.
  Real lower_bound = 0;
};

template <std::floating_point Real>
struct basic_mean_value_report {
  int degree = 0;
  std::vector<basic_q_entry<Real>> q_values;  // distinct critical points
  Real s_value = 0;
  int s_argmin = 0;
  Real t_value = 0;
  int t_argmax = 0;
  Real tischler_value = 0;
  Real smale_margin = 0;
  Real dual_bound = 0;
  Real dual_margin = 0;
  Real tischler_bound = 0;
  std::optional<basic_proof_quantities<Real>> proof;
};

using q_entry = basic_q_entry<double>;
using proof_quantities = basic_proof_quantities<double>;
using mean_value_report = basic_mean_value_report<double>;

// min over critical points of |Q - 1/2|
template <std::floating_point Real>
Real tischler_value(const basic_mean_value_report<Real>& report) {
  Real best = std::numeric_limits<Real>::infinity();
  for (const auto& e : report.q_values) {
    best = std::min(best, std::abs(e.q - std::complex<Real>(Real(0.5), 0)));
  }
  return best;
}

/**
 * Full mean-value report for (P, z) given Crit(P).
 *
 * S and T range over the distinct critical points; the c1 identity uses
 * the multiset. Proof quantities are attached only when P is monic with
 * P(0) = 0 and z = 0 exactly.
 */
template <std::floating_point Real>
basic_mean_value_report<Real> analyze(const basic_polynomial<Real>& p,
                                      const std::complex<Real>& z,
                                      const basic_root_set<Real>& crit) {
  using cplx = std::complex<Real>;
  const int d = p.degree();
  if (d < 2) throw invalid_degree("analysis needs degree >= 2");
  if (!crit.converged) {
    throw not_converged_error(
        "critical points did not converge; re-solve with a larger budget");
  }
  if (crit.total_multiplicity() != d - 1) {
    throw invalid_argument("critical point set does not match the degree");
  }
  if (!is_finite(z)) throw invalid_argument("z must be finite");

  std::vector<basic_root_estimate<Real>> points = crit.roots;
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a.location.real() != b.location.real()) {
      return a.location.real() < b.location.real();
    }
    return a.location.imag() < b.location.imag();
  });

  basic_mean_value_report<Real> rep;
  rep.degree = d;
  for (const auto& r : points) {
    basic_q_entry<Real> e;
    e.zeta = r.location;
    e.q = q_value(p, z, r.location);
    e.abs_q = std::abs(e.q);
    e.multiplicity = r.multiplicity;
    rep.q_values.push_back(e);
  }

  rep.s_value = rep.q_values[0].abs_q;
  rep.t_value = rep.q_values[0].abs_q;
  for (int i = 1; i < static_cast<int>(rep.q_values.size()); ++i) {
    const Real v = rep.q_values[i].abs_q;
    if (v < rep.s_value) {
      rep.s_value = v;
      rep.s_argmin = i;
    }
    if (v > rep.t_value) {
      rep.t_value = v;
      rep.t_argmax = i;
    }
  }
  rep.tischler_value = tischler_value(rep);
  rep.smale_margin = Real(4) - rep.s_value;
  rep.dual_bound = Real(dual_bound(d));
  rep.dual_margin = rep.t_value - rep.dual_bound;
  rep.tischler_bound = Real(tischler_bound(d));

  if (p.is_normal_form() && z == cplx{}) {
    basic_proof_quantities<Real> pq;
    Real max_value = -1;
    for (int i = 0; i < static_cast<int>(rep.q_values.size()); ++i) {
      const Real value = std::abs(p(rep.q_values[i].zeta));
      const Real root =
          value == Real(0) ? Real(0) : std::exp(std::log(value) / Real(d));
      if (root > pq.R) pq.R = root;
      if (value > max_value) {
        max_value = value;
        pq.R_argmax = i;
      }
    }
    pq.min_ratio = std::numeric_limits<Real>::infinity();
    for (const auto& e : rep.q_values) {
      const Real mod = std::abs(e.zeta);
      const Real ratio =
          mod > Real(0) ? pq.R / mod : std::numeric_limits<Real>::infinity();
      pq.ratios.push_back(ratio);
      pq.min_ratio = std::min(pq.min_ratio, ratio);
    }
    pq.c1_residual = c1_residual(p, crit);
    Real prod_abs = 1;
    for (const auto& r : points) {
      for (int k = 0; k < r.multiplicity; ++k) prod_abs *= std::abs(r.location);
    }
    const Real zk = std::abs(rep.q_values[pq.R_argmax].zeta);
    pq.lower_bound = max_value / (zk * Real(d) * prod_abs);
    rep.proof = std::move(pq);
  }
  return rep;
}

// Convenience overload that solves for Crit(P) first.
template <std::floating_point Real>
basic_mean_value_report<Real> analyze(const basic_polynomial<Real>& p,
                                      const std::complex<Real>& z,
                                      const solver_config& cfg = {}) {
  return analyze(p, z, critical_points(p, cfg));
}

}  // namespace smv
