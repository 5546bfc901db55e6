#pragma once

// The two extremal families: z^d - d z and (z + 1)^d - 1.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "smv/error.hpp"
#include "smv/polynomial.hpp"

namespace smv {

// z^d - d z; S = T = 1 - 1/d at z = 0.
inline polynomial smale_extremal(int d) {
  if (d < 2 || d > polynomial::max_degree) throw invalid_degree("degree must lie in [2, 64]");
  std::vector<complex> c(d + 1);
  c[1] = complex(-d, 0);
  c[d] = complex(1, 0);
  return polynomial(std::move(c));
}

// (z + 1)^d - 1 expanded; T = 1/d at z = 0. Binomials come from an integer
// Pascal row and are rounded once.
inline polynomial dual_extremal(int d) {
  if (d < 2 || d > polynomial::max_degree) throw invalid_degree("degree must lie in [2, 64]");
  std::vector<std::uint64_t> row(d + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= d; ++n) {
    for (int k = n; k > 0; --k) row[k] += row[k - 1];
  }
  std::vector<complex> c(d + 1);
  for (int k = 1; k <= d; ++k) c[k] = complex(static_cast<double>(row[k]), 0);
  return polynomial(std::move(c));
}

inline std::optional<polynomial> named_polynomial(std::string_view name, int d) {
  if (name == "p0") return smale_extremal(d);
  if (name == "pstar") return dual_extremal(d);
  return std::nullopt;
}

}  // namespace smv
