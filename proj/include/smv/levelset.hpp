#pragma once

// Sampling of |P| on a rectangular grid, marching-squares extraction of the
// boundary of {z : |P(z)| <= R^d}, and SVG/CSV emitters.

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

#include "smv/error.hpp"
#include "smv/format.hpp"
#include "smv/parallel.hpp"
#include "smv/polynomial.hpp"
#include "smv/roots.hpp"

namespace smv {

struct window {
  double x_min = -1, x_max = 1, y_min = -1, y_max = 1;
};

struct level_set_grid {
  window bounds;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major, values[j * nx + i]
  double threshold = 0;

  [[nodiscard]] double dx() const { return (bounds.x_max - bounds.x_min) / (nx - 1); }
  [[nodiscard]] double dy() const { return (bounds.y_max - bounds.y_min) / (ny - 1); }
  [[nodiscard]] double x(int i) const { return bounds.x_min + i * dx(); }
  [[nodiscard]] double y(int j) const { return bounds.y_min + j * dy(); }
  [[nodiscard]] double at(int i, int j) const { return values[j * nx + i]; }
  [[nodiscard]] bool inside(int i, int j) const { return at(i, j) <= threshold; }
};

using point2 = std::pair<double, double>;

struct contour_set {
  std::vector<std::vector<point2>> polylines;
  std::vector<bool> closed;  // closed polylines do not repeat their first vertex
};

inline level_set_grid sample_grid(const polynomial& p, const window& w, int nx,
                                  int ny, double threshold, int threads = 1) {
  if (nx < 2 || ny < 2) throw invalid_argument("grid needs nx, ny >= 2");
  if (!std::isfinite(w.x_min) || !std::isfinite(w.x_max) ||
      !std::isfinite(w.y_min) || !std::isfinite(w.y_max) ||
      !(w.x_max > w.x_min) || !(w.y_max > w.y_min)) {
    throw invalid_argument("grid window must be finite with positive extent");
  }
  if (!std::isfinite(threshold) || threshold < 0) {
    throw invalid_argument("threshold must be finite and nonnegative");
  }
  level_set_grid g;
  g.bounds = w;
  g.nx = nx;
  g.ny = ny;
  g.threshold = threshold;
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  parallel_for(ny, threads, [&](int j) {
    const double y = g.y(j);
    for (int i = 0; i < nx; ++i) g.values[j * nx + i] = std::abs(p(complex(g.x(i), y)));
  });
  return g;
}

namespace detail {

struct contour_edges {
  const level_set_grid& g;
  int horizontal_count() const { return (g.nx - 1) * g.ny; }
  int h(int i, int j) const { return j * (g.nx - 1) + i; }
  int v(int i, int j) const { return horizontal_count() + j * g.nx + i; }

  point2 crossing(int id) const {
    int i0, j0, i1, j1;
    if (id < horizontal_count()) {
      j0 = j1 = id / (g.nx - 1);
      i0 = id % (g.nx - 1);
      i1 = i0 + 1;
    } else {
      const int k = id - horizontal_count();
      j0 = k / g.nx;
      i0 = i1 = k % g.nx;
      j1 = j0 + 1;
    }
    const double a = g.at(i0, j0);
    const double b = g.at(i1, j1);
    const double t = std::clamp((g.threshold - a) / (b - a), 0.0, 1.0);
    return {g.x(i0) + t * (g.x(i1) - g.x(i0)), g.y(j0) + t * (g.y(j1) - g.y(j0))};
  }
};

}  // namespace detail

/**
 * Marching squares at value = threshold. Saddle cells are resolved by the
 * mean of the four corners: corners whose side differs from the centre get
 * cut off individually.
 */
inline contour_set extract_contour(const level_set_grid& g) {
  detail::contour_edges edges{g};
  const int total = edges.horizontal_count() + g.nx * (g.ny - 1);
  std::vector<std::vector<int>> adjacent(total);
  auto link = [&](int a, int b) {
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  };

  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      // Corners counter-clockwise from bottom-left; edge k joins corner k
      // to corner k+1.
      const bool in[4] = {g.inside(i, j), g.inside(i + 1, j),
                          g.inside(i + 1, j + 1), g.inside(i, j + 1)};
      const int edge[4] = {edges.h(i, j), edges.v(i + 1, j), edges.h(i, j + 1),
                           edges.v(i, j)};
      int crossed[4];
      int count = 0;
      for (int k = 0; k < 4; ++k) {
        if (in[k] != in[(k + 1) % 4]) crossed[count++] = k;
      }
      if (count == 2) {
        link(edge[crossed[0]], edge[crossed[1]]);
      } else if (count == 4) {
        const double centre =
            (g.at(i, j) + g.at(i + 1, j) + g.at(i + 1, j + 1) + g.at(i, j + 1)) / 4;
        const bool centre_in = centre <= g.threshold;
        // Corner k is bounded by edges k-1 and k.
        for (int k = 0; k < 4; ++k) {
          if (in[k] != centre_in) link(edge[(k + 3) % 4], edge[k]);
        }
      }
    }
  }

  contour_set out;
  std::vector<bool> used(total, false);
  auto trace = [&](int start) {
    std::vector<point2> line{edges.crossing(start)};
    used[start] = true;
    int prev = -1, cur = start;
    bool closed = false;
    while (true) {
      int next = -1;
      for (int nb : adjacent[cur]) {
        if (nb == prev && adjacent[cur].size() > 1) continue;
        if (nb == start && prev != -1) {
          closed = true;
          break;
        }
        if (!used[nb]) {
          next = nb;
          break;
        }
      }
      if (closed || next < 0) break;
      used[next] = true;
      line.push_back(edges.crossing(next));
      prev = cur;
      cur = next;
    }
    out.polylines.push_back(std::move(line));
    out.closed.push_back(closed);
  };
  // Open chains end on the window boundary with a single neighbour.
  for (int id = 0; id < total; ++id) {
    if (!used[id] && adjacent[id].size() == 1) trace(id);
  }
  for (int id = 0; id < total; ++id) {
    if (!used[id] && !adjacent[id].empty()) trace(id);
  }
  return out;
}

// R = max_j |P(zeta_j)|^(1/d) and the sublevel threshold R^d.
struct sublevel_threshold {
  double R = 0;
  double value = 0;
};

inline sublevel_threshold threshold_from(const polynomial& p, const root_set& crit) {
  sublevel_threshold t;
  const int d = p.degree();
  for (const auto& r : crit.roots) {
    const double v = std::abs(p(r.location));
    const double root = v == 0 ? 0.0 : std::exp(std::log(v) / d);
    t.R = std::max(t.R, root);
  }
  t.value = std::pow(t.R, d);
  return t;
}

// Square around the centroid of the critical points, half-width
// 2.5 * max(1, max |zeta|).
inline window default_window(const root_set& crit) {
  complex centroid{};
  double max_mod = 0;
  int count = 0;
  for (const auto& r : crit.roots) {
    centroid += r.location * static_cast<double>(r.multiplicity);
    count += r.multiplicity;
    max_mod = std::max(max_mod, std::abs(r.location));
  }
  if (count > 0) centroid /= static_cast<double>(count);
  const double half = 2.5 * std::max(1.0, max_mod);
  return {centroid.real() - half, centroid.real() + half, centroid.imag() - half,
          centroid.imag() + half};
}

struct containment_report {
  double threshold = 0;
  double origin_value = 0;
  bool origin_inside = false;
  std::vector<complex> critical_points;
  std::vector<double> critical_values;
  std::vector<bool> critical_inside;
  bool all_inside = false;
};

inline containment_report containment_check(const polynomial& p, const root_set& crit,
                                             double threshold) {
  containment_report rep;
  rep.threshold = threshold;
  rep.origin_value = std::abs(p(complex{}));
  rep.origin_inside = rep.origin_value <= threshold + 1e-12 * (1 + threshold);
  rep.all_inside = rep.origin_inside;
  for (const auto& r : crit.roots) {
    const double v = std::abs(p(r.location));
    const bool ok = v <= threshold * (1 + 1e-9);
    rep.critical_points.push_back(r.location);
    rep.critical_values.push_back(v);
    rep.critical_inside.push_back(ok);
    rep.all_inside = rep.all_inside && ok;
  }
  return rep;
}

/**
 * Grid evidence that the below-threshold component holding the node nearest
 * 0 reaches every critical point (8-connectivity; a critical point counts as
 * reached when a component node lies within two grid spacings). Evidence
 * only, not a proof of connectedness.
 */
struct connectivity_report {
  bool origin_in_window = false;
  bool origin_node_inside = false;
  std::vector<bool> reached;
  bool all_reached = false;
};

inline connectivity_report connectivity_check(const level_set_grid& g,
                                              const root_set& crit) {
  connectivity_report rep;
  const auto& w = g.bounds;
  rep.origin_in_window = w.x_min <= 0 && 0 <= w.x_max && w.y_min <= 0 && 0 <= w.y_max;
  rep.reached.assign(crit.roots.size(), false);
  if (!rep.origin_in_window) return rep;
  auto nearest = [&](double x, double y) {
    const int i = std::clamp(static_cast<int>(std::lround((x - w.x_min) / g.dx())), 0, g.nx - 1);
    const int j = std::clamp(static_cast<int>(std::lround((y - w.y_min) / g.dy())), 0, g.ny - 1);
    return std::pair{i, j};
  };
  const auto [oi, oj] = nearest(0, 0);
  rep.origin_node_inside = g.inside(oi, oj);
  if (!rep.origin_node_inside) return rep;

  std::vector<char> seen(g.values.size(), 0);
  std::deque<std::pair<int, int>> queue{{oi, oj}};
  seen[oj * g.nx + oi] = 1;
  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        const int a = i + di, b = j + dj;
        if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) continue;
        if (seen[b * g.nx + a] || !g.inside(a, b)) continue;
        seen[b * g.nx + a] = 1;
        queue.emplace_back(a, b);
      }
    }
  }
  rep.all_reached = true;
  for (std::size_t k = 0; k < crit.roots.size(); ++k) {
    const complex z = crit.roots[k].location;
    const auto [ci, cj] = nearest(z.real(), z.imag());
    bool hit = false;
    for (int b = std::max(0, cj - 2); b <= std::min(g.ny - 1, cj + 2) && !hit; ++b) {
      for (int a = std::max(0, ci - 2); a <= std::min(g.nx - 1, ci + 2) && !hit; ++a) {
        hit = seen[b * g.nx + a] != 0;
      }
    }
    rep.reached[k] = hit;
    rep.all_reached = rep.all_reached && hit;
  }
  return rep;
}

// CSV grid dump: header "x,y,abs_p", one row per node, LF endings.
inline void write_grid_csv(std::ostream& os, const level_set_grid& g) {
  os << "x,y,abs_p\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      os << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
         << format_double(g.at(i, j)) << '\n';
    }
  }
}

// SVG 1.1: contour polylines, a cross at 0 and dots at the critical points.
inline void write_svg(std::ostream& os, const level_set_grid& g, const contour_set& c,
                      const root_set& crit, int pixels = 800) {
  const auto& w = g.bounds;
  const double sx = pixels / (w.x_max - w.x_min);
  const double sy = pixels / (w.y_max - w.y_min);
  auto px = [&](double x) { return format_double((x - w.x_min) * sx); };
  auto py = [&](double y) { return format_double((w.y_max - y) * sy); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << pixels
     << "\" height=\"" << pixels << "\" viewBox=\"0 0 " << pixels << ' ' << pixels
     << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << pixels << "\" height=\"" << pixels
     << "\" fill=\"white\"/>\n";
  os << "<g id=\"contour\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\">\n";
  for (std::size_t k = 0; k < c.polylines.size(); ++k) {
    os << (c.closed[k] ? "<polygon" : "<polyline") << " points=\"";
    for (std::size_t v = 0; v < c.polylines[k].size(); ++v) {
      if (v) os << ' ';
      os << px(c.polylines[k][v].first) << ',' << py(c.polylines[k][v].second);
    }
    os << "\"/>\n";
  }
  os << "</g>\n";
  os << "<g id=\"origin\" stroke=\"#c0392b\" stroke-width=\"2\">\n"
     << "<line x1=\"" << format_double((0 - w.x_min) * sx - 6) << "\" y1=\"" << py(0)
     << "\" x2=\"" << format_double((0 - w.x_min) * sx + 6) << "\" y2=\"" << py(0)
     << "\"/>\n"
     << "<line x1=\"" << px(0) << "\" y1=\"" << format_double(w.y_max * sy - 6)
     << "\" x2=\"" << px(0) << "\" y2=\"" << format_double(w.y_max * sy + 6)
     << "\"/>\n</g>\n";
  os << "<g id=\"critical-points\" fill=\"black\">\n";
  for (const auto& r : crit.roots) {
    os << "<circle cx=\"" << px(r.location.real()) << "\" cy=\"" << py(r.location.imag())
       << "\" r=\"4\"/>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace smv
