#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's evaluation, expansion or root-finding code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// sum_k c_k z^k with explicit powers, accumulated in long double.
inline cplx power_sum(const std::vector<cplx>& c, cplx z) {
  std::complex<long double> acc{};
  const std::complex<long double> zz(z.real(), z.imag());
  for (std::size_t k = 0; k < c.size(); ++k) {
    acc += std::complex<long double>(c[k].real(), c[k].imag()) *
           std::pow(zz, static_cast<int>(k));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// sum_k k c_k z^(k-1)
inline cplx power_sum_derivative(const std::vector<cplx>& c, cplx z) {
  std::complex<long double> acc{};
  const std::complex<long double> zz(z.real(), z.imag());
  for (std::size_t k = 1; k < c.size(); ++k) {
    acc += static_cast<long double>(k) *
           std::complex<long double>(c[k].real(), c[k].imag()) *
           std::pow(zz, static_cast<int>(k - 1));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Central difference of power_sum along the real axis.
inline cplx finite_difference(const std::vector<cplx>& c, cplx z, double h = 1e-6) {
  return (power_sum(c, z + h) - power_sum(c, z - h)) / (2 * h);
}

// C(n, k) by the multiplicative formula in 128-bit integers.
inline double binomial(int n, int k) {
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<double>(r);
}

// Coefficients of (z + shift)^d - offset, ascending.
inline std::vector<cplx> shifted_power(int d, double shift, double offset) {
  std::vector<cplx> c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = binomial(d, k) * std::pow(shift, d - k);
  c[0] -= offset;
  return c;
}

// Q by the defining formula with oracle evaluation.
inline cplx q_direct(const std::vector<cplx>& c, cplx z, cplx zeta) {
  return (power_sum(c, z) - power_sum(c, zeta)) / ((z - zeta) * power_sum_derivative(c, z));
}

// Smallest achievable max |a_i - b_pi(i)| over all bijections pi.
inline double multiset_distance(std::vector<cplx> a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Unit roots exp(2 pi i k / n).
inline std::vector<cplx> roots_of_unity(int n) {
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2 * M_PI * k / n));
  return out;
}

}  // namespace oracle
