#pragma once

// All roots of a complex polynomial: Aberth-Ehrlich simultaneous iteration,
// multiplicity clustering, and Newton polishing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "smv/error.hpp"
#include "smv/polynomial.hpp"

namespace smv {

struct solver_config {
  int max_iterations = 200;
  // Bound on |P(root)| / sum_k |c_k| |root|^k for a successful solve.
  double residual_tolerance = 1e-12;
  // Estimates closer than this times (1 + max |estimate|) are merged.
  double cluster_radius_multiplier = 1e-6;
};

template <std::floating_point Real>
struct basic_root_estimate {
  std::complex<Real> location;
  int multiplicity = 1;
  Real residual = 0;
  Real cluster_radius = 0;
};

template <std::floating_point Real>
struct basic_root_set {
  std::vector<basic_root_estimate<Real>> roots;  // sorted by (re, im)
  int degree = 0;
  bool converged = false;
  int iterations = 0;

  [[nodiscard]] std::vector<std::complex<Real>> distinct() const {
    std::vector<std::complex<Real>> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(r.location);
    return out;
  }

  // Locations repeated by multiplicity.
  [[nodiscard]] std::vector<std::complex<Real>> multiset() const {
    std::vector<std::complex<Real>> out;
    out.reserve(degree);
    for (const auto& r : roots) out.insert(out.end(), r.multiplicity, r.location);
    return out;
  }

  [[nodiscard]] int total_multiplicity() const {
    int m = 0;
    for (const auto& r : roots) m += r.multiplicity;
    return m;
  }
};

using root_estimate = basic_root_estimate<double>;
using root_set = basic_root_set<double>;

namespace detail {

// Fixed rotation of the starting circle, 0.12*pi.
inline constexpr double aberth_start_angle = 0.12 * std::numbers::pi;

template <std::floating_point Real>
Real relative_residual(const basic_polynomial<Real>& p,
                       const std::complex<Real>& z) {
  const Real scale = magnitude_sum(p, z);
  if (scale == Real(0)) return Real(0);
  return std::abs(p(z)) / scale;
}

template <std::floating_point Real>
std::complex<Real> derivative_value(const basic_polynomial<Real>& p, int order,
                                    const std::complex<Real>& z) {
  // Evaluates P^(order)(z) without building the intermediate polynomials.
  auto c = p.coefficients();
  std::complex<Real> acc{};
  for (int k = p.degree(); k >= order; --k) {
    Real falling = 1;
    for (int j = 0; j < order; ++j) falling *= Real(k - j);
    acc = acc * z + c[k] * falling;
  }
  return acc;
}

struct union_find {
  std::vector<int> parent;
  explicit union_find(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/**
 * Every root of P, counted with multiplicity.
 *
 * Starting points sit on a rotated circle of radius 0.9 times the Cauchy
 * bound. Iterates are frozen once |P| reaches the Horner rounding level.
 * Afterwards estimates are clustered when they are within the configured
 * radius or when their Weierstrass inclusion disks (inflated by rounding
 * noise) overlap; each cluster is replaced by its centroid, refined as a
 * simple root of P^(m-1). Singletons get Newton polishing.
 *
 * Non-convergence is reported through `converged`, not thrown.
 */
template <std::floating_point Real>
basic_root_set<Real> all_roots(const basic_polynomial<Real>& p,
                               const solver_config& cfg = {}) {
  using cplx = std::complex<Real>;
  const int n = p.degree();
  if (n < 1) throw invalid_degree("root finding needs degree >= 1");
  if (cfg.max_iterations < 1 || !(cfg.residual_tolerance > 0) ||
      !(cfg.cluster_radius_multiplier >= 0)) {
    throw invalid_argument("invalid solver configuration");
  }
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  auto c = p.coefficients();
  const cplx lead = p.leading();

  basic_root_set<Real> out;
  out.degree = n;

  if (n == 1) {
    const cplx z = -c[0] / lead;
    out.roots.push_back({z, 1, detail::relative_residual(p, z), Real(0)});
    out.converged = out.roots[0].residual <= cfg.residual_tolerance;
    return out;
  }

  Real cauchy = 0;
  for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(c[k] / lead));
  cauchy += 1;

  std::vector<cplx> z(n);
  const Real radius = Real(0.9) * cauchy;
  for (int k = 0; k < n; ++k) {
    const Real angle = Real(2) * std::numbers::pi_v<Real> * Real(k) / Real(n) +
                       Real(detail::aberth_start_angle);
    z[k] = std::polar(radius, angle);
  }

  const Real noise_factor = Real(2 * n) * eps;
  std::vector<bool> frozen(n, false);
  int iteration = 0;
  while (iteration < cfg.max_iterations) {
    ++iteration;
    bool active = false;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      const auto [value, slope] = evaluate_with_derivative(p, z[i]);
      if (std::abs(value) <= noise_factor * magnitude_sum(p, z[i])) {
        frozen[i] = true;
        continue;
      }
      cplx repulsion{};
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += Real(1) / (z[i] - z[j]);
      }
      const cplx step = value / (slope - value * repulsion);
      if (!is_finite(step)) {
        // Collided with another iterate; nudge off the collision.
        z[i] += cplx(eps, eps) * (Real(1) + std::abs(z[i])) * Real(1024);
        active = true;
        continue;
      }
      z[i] -= step;
      active = true;
      if (std::abs(step) <= eps * std::abs(z[i])) frozen[i] = true;
    }
    if (!active) break;
  }
  out.iterations = iteration;

  // Inclusion radii: n * (|P| + noise) / |c_n prod_{j!=i} (z_i - z_j)|.
  std::vector<Real> inclusion(n);
  for (int i = 0; i < n; ++i) {
    Real denom = std::abs(lead);
    for (int j = 0; j < n; ++j) {
      if (j != i) denom *= std::abs(z[i] - z[j]);
    }
    const Real num = std::abs(p(z[i])) + noise_factor * magnitude_sum(p, z[i]);
    inclusion[i] = denom > Real(0) ? Real(n) * num / denom
                                   : std::numeric_limits<Real>::infinity();
  }

  Real max_modulus = 0;
  for (const auto& v : z) max_modulus = std::max(max_modulus, std::abs(v));
  const Real merge_radius =
      Real(cfg.cluster_radius_multiplier) * (Real(1) + max_modulus);

  detail::union_find groups(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Real dist = std::abs(z[i] - z[j]);
      if (dist <= merge_radius || dist <= inclusion[i] + inclusion[j]) {
        groups.join(i, j);
      }
    }
  }

  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) members[groups.find(i)].push_back(i);

  for (const auto& group : members) {
    if (group.empty()) continue;
    const int m = static_cast<int>(group.size());
    basic_root_estimate<Real> est;
    est.multiplicity = m;
    if (m == 1) {
      cplx x = z[group[0]];
      Real best = std::abs(p(x));
      for (int step = 0; step < 3 && best > Real(0); ++step) {
        const auto [value, slope] = evaluate_with_derivative(p, x);
        if (slope == cplx{}) break;
        const cplx trial = x - value / slope;
        const Real r = std::abs(p(trial));
        if (!(r < best)) break;
        x = trial;
        best = r;
      }
      est.location = x;
    } else {
      cplx centroid{};
      for (int i : group) centroid += z[i];
      centroid /= Real(m);
      Real spread = 0;
      for (int i : group) spread = std::max(spread, std::abs(z[i] - centroid));
      // The centroid approximates a simple root of P^(m-1).
      cplx x = centroid;
      Real best = std::abs(detail::derivative_value(p, m - 1, x));
      for (int step = 0; step < 4 && best > Real(0); ++step) {
        const cplx f = detail::derivative_value(p, m - 1, x);
        const cplx df = detail::derivative_value(p, m, x);
        if (df == cplx{}) break;
        const cplx trial = x - f / df;
        if (std::abs(trial - centroid) > spread + eps * (Real(1) + std::abs(x))) {
          break;
        }
        const Real r = std::abs(detail::derivative_value(p, m - 1, trial));
        if (!(r < best)) break;
        x = trial;
        best = r;
      }
      est.location = x;
      for (int i : group) {
        est.cluster_radius = std::max(est.cluster_radius, std::abs(z[i] - x));
      }
    }
    est.residual = detail::relative_residual(p, est.location);
    out.roots.push_back(est);
  }

  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.location.real() != b.location.real()) {
      return a.location.real() < b.location.real();
    }
    return a.location.imag() < b.location.imag();
  });

  out.converged = std::all_of(out.roots.begin(), out.roots.end(), [&](const auto& r) {
    return std::isfinite(r.residual) && r.residual <= cfg.residual_tolerance;
  });
  return out;
}

// Roots of P', i.e. Crit(P) with multiplicities.
template <std::floating_point Real>
basic_root_set<Real> critical_points(const basic_polynomial<Real>& p,
                                     const solver_config& cfg = {}) {
  if (p.degree() < 2) throw invalid_degree("critical points need degree >= 2");
  return all_roots(derivative(p), cfg);
}

/**
 * Relative mismatch in P'(0) = d (-1)^(d-1) prod_j zeta_j for monic P,
 * with the product taken over the multiset of critical points.
 */
template <std::floating_point Real>
Real c1_residual(const basic_polynomial<Real>& monic,
                 const basic_root_set<Real>& crit) {
  const int d = monic.degree();
  std::complex<Real> prod{1};
  Real prod_abs = 1;
  for (const auto& r : crit.roots) {
    for (int k = 0; k < r.multiplicity; ++k) {
      prod *= r.location;
      prod_abs *= std::abs(r.location);
    }
  }
  const Real sign = (d - 1) % 2 == 0 ? Real(1) : Real(-1);
  const std::complex<Real> predicted = Real(d) * sign * prod;
  const std::complex<Real> actual = monic[1];
  const Real denom = std::max({std::abs(actual), Real(d) * prod_abs,
                               std::numeric_limits<Real>::min()});
  return std::abs(actual - predicted) / denom;
}

}  // namespace smv
