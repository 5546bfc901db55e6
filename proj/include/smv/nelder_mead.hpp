#pragma once

// Nelder-Mead simplex minimization with restarts from the incumbent.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "smv/error.hpp"

namespace smv {

struct nelder_mead_options {
  double initial_scale = 0.25;
  int max_evaluations = 20000;
  // A simplex has collapsed when both its value spread and its diameter
  // fall below these.
  double value_tolerance = 1e-13;
  double size_tolerance = 1e-11;
  // Stop after this many consecutive restarts that fail to improve.
  int max_stalled_restarts = 3;
};

struct nelder_mead_result {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int restarts = 0;
  // (evaluation index, incumbent) at every strict improvement.
  std::vector<std::pair<int, double>> history;
};

namespace detail {
struct budget_exhausted {};
}  // namespace detail

/**
 * Minimizes `f` starting from `x0`. Uses the dimension-adaptive
 * coefficients (reflection 1, expansion 1 + 2/n, contraction
 * 3/4 - 1/(2n), shrink 1 - 1/n), which reduce to the classic ones in 2D.
 */
template <class Objective>
nelder_mead_result nelder_mead(Objective&& f, std::vector<double> x0,
                               const nelder_mead_options& opt) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw invalid_argument("nelder_mead needs at least one variable");
  if (opt.max_evaluations < 1 || !(opt.initial_scale > 0)) {
    throw invalid_argument("invalid nelder_mead options");
  }
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  nelder_mead_result res;
  res.x = x0;

  auto eval = [&](const std::vector<double>& x) {
    if (res.evaluations >= opt.max_evaluations) throw detail::budget_exhausted{};
    double v = f(x);
    if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
    ++res.evaluations;
    if (v < res.value) {
      res.value = v;
      res.x = x;
      res.history.emplace_back(res.evaluations, v);
    }
    return v;
  };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(n));
  std::vector<double> values(n + 1);
  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  int stalled = 0;
  try {
    double previous_best = std::numeric_limits<double>::infinity();
    std::vector<double> start = x0;
    while (true) {
      for (int i = 0; i <= n; ++i) {
        simplex[i] = start;
        if (i > 0) simplex[i][i - 1] += opt.initial_scale;
        values[i] = eval(simplex[i]);
      }
      while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return values[a] < values[b]; });
        const int best = order.front();
        const int worst = order.back();
        const int second = order[n - 1];

        double diameter = 0;
        for (int i = 0; i <= n; ++i) {
          for (int k = 0; k < n; ++k) {
            diameter = std::max(diameter,
                                std::abs(simplex[i][k] - simplex[best][k]));
          }
        }
        const double spread = values[worst] - values[best];
        if ((spread <= opt.value_tolerance * (1.0 + std::abs(values[best])) ||
             !std::isfinite(spread)) &&
            diameter <= opt.size_tolerance) {
          break;
        }
        if (diameter <= opt.size_tolerance * 1e-3) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int i = 0; i <= n; ++i) {
          if (i == worst) continue;
          for (int k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        }
        for (auto& c : centroid) c /= n;

        for (int k = 0; k < n; ++k) {
          trial[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
        }
        const double fr = eval(trial);
        if (fr < values[best]) {
          for (int k = 0; k < n; ++k) {
            trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
          }
          const double fe = eval(trial2);
          if (fe < fr) {
            simplex[worst] = trial2;
            values[worst] = fe;
          } else {
            simplex[worst] = trial;
            values[worst] = fr;
          }
          continue;
        }
        if (fr < values[second]) {
          simplex[worst] = trial;
          values[worst] = fr;
          continue;
        }
        bool accepted = false;
        if (fr < values[worst]) {
          for (int k = 0; k < n; ++k) {
            trial2[k] = centroid[k] + gamma * (trial[k] - centroid[k]);
          }
          const double fc = eval(trial2);
          if (fc <= fr) {
            simplex[worst] = trial2;
            values[worst] = fc;
            accepted = true;
          }
        } else {
          for (int k = 0; k < n; ++k) {
            trial2[k] = centroid[k] + gamma * (simplex[worst][k] - centroid[k]);
          }
          const double fc = eval(trial2);
          if (fc < values[worst]) {
            simplex[worst] = trial2;
            values[worst] = fc;
            accepted = true;
          }
        }
        if (!accepted) {
          for (int i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (int k = 0; k < n; ++k) {
              simplex[i][k] =
                  simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = eval(simplex[i]);
          }
        }
      }
      if (previous_best - res.value <=
          opt.value_tolerance * (1.0 + std::abs(res.value))) {
        if (++stalled >= opt.max_stalled_restarts) break;
      } else {
        stalled = 0;
      }
      previous_best = res.value;
      start = res.x;
      ++res.restarts;
    }
  } catch (const detail::budget_exhausted&) {
  }
  return res;
}

}  // namespace smv
