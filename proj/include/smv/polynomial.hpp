#pragma once

// Dense complex polynomials in ascending coefficient order (c_0 first).

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smv/error.hpp"

namespace smv {

template <std::floating_point Real>
constexpr bool is_finite(const std::complex<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/**
 * Complex polynomial of exact degree.
 *
 * The leading coefficient is nonzero (an exact test, not a tolerance) and
 * every coefficient is finite. Degree 0 is representable because it is the
 * derivative of a linear polynomial; operations that need a genuine
 * polynomial map check their own degree preconditions.
 */
template <std::floating_point Real>
class basic_polynomial {
 public:
  using real_type = Real;
  using value_type = std::complex<Real>;

  static constexpr int max_degree = 64;

  explicit basic_polynomial(std::vector<value_type> coeffs)
      : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw invalid_degree("polynomial needs at least one coefficient");
    }
    if (degree() > max_degree) {
      throw invalid_degree("degree " + std::to_string(degree()) +
                           " exceeds the supported maximum of " +
                           std::to_string(max_degree));
    }
    for (const auto& c : coeffs_) {
      if (!is_finite(c)) {
        throw invalid_argument("polynomial coefficients must be finite");
      }
    }
    if (coeffs_.back() == value_type{}) {
      throw invalid_argument("leading coefficient must be nonzero");
    }
  }

  basic_polynomial(std::initializer_list<value_type> coeffs)
      : basic_polynomial(std::vector<value_type>(coeffs)) {}

  [[nodiscard]] int degree() const {
    return static_cast<int>(coeffs_.size()) - 1;
  }
  [[nodiscard]] std::span<const value_type> coefficients() const {
    return coeffs_;
  }
  [[nodiscard]] const value_type& operator[](int k) const { return coeffs_[k]; }
  [[nodiscard]] const value_type& leading() const { return coeffs_.back(); }

  // max_k |c_k|
  [[nodiscard]] Real coefficient_scale() const {
    Real m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  // Monic with zero constant term, both exactly.
  [[nodiscard]] bool is_normal_form() const {
    return leading() == value_type{1} && coeffs_.front() == value_type{};
  }

  [[nodiscard]] value_type operator()(const value_type& z) const {
    value_type acc = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
  }

  friend bool operator==(const basic_polynomial&, const basic_polynomial&) =
      default;

 private:
  std::vector<value_type> coeffs_;
};

using polynomial = basic_polynomial<double>;
using complex = std::complex<double>;

// Horner evaluation of P(z).
template <std::floating_point Real>
std::complex<Real> evaluate(const basic_polynomial<Real>& p,
                            const std::complex<Real>& z) {
  return p(z);
}

// P(z) and P'(z) in a single Horner pass.
template <std::floating_point Real>
std::pair<std::complex<Real>, std::complex<Real>> evaluate_with_derivative(
    const basic_polynomial<Real>& p, const std::complex<Real>& z) {
  auto c = p.coefficients();
  std::complex<Real> value = c.back();
  std::complex<Real> slope{};
  for (int k = p.degree() - 1; k >= 0; --k) {
    slope = slope * z + value;
    value = value * z + c[k];
  }
  return {value, slope};
}

// sum_k |c_k| |z|^k, the natural scale for rounding error in P(z).
template <std::floating_point Real>
Real magnitude_sum(const basic_polynomial<Real>& p,
                   const std::complex<Real>& z) {
  auto c = p.coefficients();
  const Real r = std::abs(z);
  Real acc = std::abs(c.back());
  for (int k = p.degree() - 1; k >= 0; --k) acc = acc * r + std::abs(c[k]);
  return acc;
}

template <std::floating_point Real>
basic_polynomial<Real> derivative(const basic_polynomial<Real>& p) {
  if (p.degree() < 1) {
    throw invalid_degree("cannot differentiate a constant polynomial");
  }
  auto c = p.coefficients();
  std::vector<std::complex<Real>> out(p.degree());
  for (int k = 1; k <= p.degree(); ++k) out[k - 1] = c[k] * Real(k);
  return basic_polynomial<Real>(std::move(out));
}

// Coefficients of prod_j (z - roots_j), ascending, leading 1.
template <std::floating_point Real>
std::vector<std::complex<Real>> expand_from_roots(
    std::span<const std::complex<Real>> roots) {
  std::vector<std::complex<Real>> prod{std::complex<Real>{1}};
  prod.reserve(roots.size() + 1);
  for (const auto& r : roots) {
    prod.push_back(prod.back());
    for (std::size_t k = prod.size() - 2; k > 0; --k) {
      prod[k] = prod[k - 1] - r * prod[k];
    }
    prod[0] = -r * prod[0];
  }
  return prod;
}

/**
 * Monic P of degree d with P(0) = 0 whose derivative is
 * d * prod_j (z - zetas_j).
 */
template <std::floating_point Real>
basic_polynomial<Real> from_critical_points(
    std::span<const std::complex<Real>> zetas, int d) {
  if (d < 2) throw invalid_degree("from_critical_points needs degree >= 2");
  if (static_cast<int>(zetas.size()) != d - 1) {
    throw invalid_degree("expected " + std::to_string(d - 1) +
                         " critical points for degree " + std::to_string(d));
  }
  for (const auto& z : zetas) {
    if (!is_finite(z)) throw invalid_argument("critical points must be finite");
  }
  const auto prod = expand_from_roots(zetas);
  std::vector<std::complex<Real>> coeffs(d + 1);
  for (int k = 0; k < d; ++k) {
    coeffs[k + 1] = prod[k] * (Real(d) / Real(k + 1));
  }
  coeffs[d] = std::complex<Real>{1};
  return basic_polynomial<Real>(std::move(coeffs));
}

template <std::floating_point Real>
basic_polynomial<Real> from_critical_points(
    const std::vector<std::complex<Real>>& zetas, int d) {
  return from_critical_points(std::span<const std::complex<Real>>(zetas), d);
}

/// Pair of affine maps z = a*z~ + b (domain) and w~ = A*w + B (range).
template <std::floating_point Real>
struct basic_affine_maps {
  std::complex<Real> domain_scale{1};   // a
  std::complex<Real> domain_shift{};    // b
  std::complex<Real> range_scale{1};    // A
  std::complex<Real> range_shift{};     // B

  void validate() const {
    if (!is_finite(domain_scale) || !is_finite(domain_shift) ||
        !is_finite(range_scale) || !is_finite(range_shift)) {
      throw invalid_argument("affine map constants must be finite");
    }
    if (domain_scale == std::complex<Real>{} ||
        range_scale == std::complex<Real>{}) {
      throw invalid_argument("affine maps need a*A != 0");
    }
  }

  // z~ such that a*z~ + b = z
  [[nodiscard]] std::complex<Real> pull_back(const std::complex<Real>& z) const {
    return (z - domain_shift) / domain_scale;
  }
  [[nodiscard]] std::complex<Real> push_forward(
      const std::complex<Real>& zt) const {
    return domain_scale * zt + domain_shift;
  }
};

using affine_maps = basic_affine_maps<double>;

/// Coefficients of A*P(a*z + b) + B, by synthetic substitution.
template <std::floating_point Real>
basic_polynomial<Real> affine_conjugate(const basic_polynomial<Real>& p,
                                        const basic_affine_maps<Real>& m) {
  m.validate();
  auto c = p.coefficients();
  const int d = p.degree();
  // acc holds the polynomial in z~ built so far, ascending.
  std::vector<std::complex<Real>> acc{c[d]};
  acc.reserve(d + 1);
  for (int k = d - 1; k >= 0; --k) {
    acc.push_back(std::complex<Real>{});
    for (int j = static_cast<int>(acc.size()) - 1; j > 0; --j) {
      acc[j] = acc[j] * m.domain_shift + acc[j - 1] * m.domain_scale;
    }
    acc[0] = acc[0] * m.domain_shift + c[k];
  }
  for (auto& v : acc) v *= m.range_scale;
  acc[0] += m.range_shift;
  return basic_polynomial<Real>(std::move(acc));
}

template <std::floating_point Real>
struct basic_normalized {
  basic_polynomial<Real> poly;
  basic_affine_maps<Real> maps;
};

/**
 * [P(z + z0) - P(z0)] / c_d: monic, vanishing at 0, and Q-equivalent to
 * (P, z0). The leading and constant coefficients are assigned literally.
 */
template <std::floating_point Real>
basic_normalized<Real> normalize_for_theorem(const basic_polynomial<Real>& p,
                                             const std::complex<Real>& z0) {
  if (p.degree() < 1) throw invalid_degree("normalization needs degree >= 1");
  if (!is_finite(z0)) throw invalid_argument("z0 must be finite");
  basic_affine_maps<Real> m;
  m.domain_scale = std::complex<Real>{1};
  m.domain_shift = z0;
  m.range_scale = std::complex<Real>{1} / p.leading();
  m.range_shift = -p(z0) / p.leading();
  auto shifted = affine_conjugate(p, m);
  std::vector<std::complex<Real>> coeffs(shifted.coefficients().begin(),
                                         shifted.coefficients().end());
  coeffs.back() = std::complex<Real>{1};
  coeffs.front() = std::complex<Real>{};
  return {basic_polynomial<Real>(std::move(coeffs)), m};
}

}  // namespace smv
