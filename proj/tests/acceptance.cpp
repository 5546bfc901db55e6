// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "smv/smv.hpp"

using smv::complex;
using smv::polynomial;

namespace {

constexpr std::uint64_t acceptance_seed = 20240601;

struct outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

class suite {
 public:
  void check(int id, const std::string& name, double time_limit_s,
             const std::function<outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0 && secs >= time_limit_s) {
      o.pass = false;
      o.detail += fmt(" [over time limit %.0f s]", time_limit_s);
    }
    report(id, name, o, secs);
  }

  void report(int id, const std::string& name, const outcome& o, double secs) {
    std::printf("%s  AC%-2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures_ += o.pass ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

outcome smale_extremal_values() {
  double worst = 0;
  for (int d = 2; d <= 12; ++d) {
    const auto rep = smv::analyze(smv::smale_extremal(d), complex{});
    const double want = 1.0 - 1.0 / d;
    worst = std::max({worst, std::abs(rep.s_value - want), std::abs(rep.t_value - want)});
  }
  return {worst <= 1e-9, fmt("max |S-(1-1/d)|, |T-(1-1/d)| over d=2..12 is %.3g", worst)};
}

outcome dual_extremal_values() {
  double worst = 0;
  for (int d = 2; d <= 12; ++d) {
    const auto rep = smv::analyze(smv::dual_extremal(d), complex{});
    worst = std::max(worst, std::abs(rep.t_value * d - 1.0));
  }
  return {worst <= 1e-6, fmt("max relative error of T against 1/d over d=2..12 is %.3g", worst)};
}

outcome affine_invariance() {
  smv::splitmix64 rng(smv::derive_seed(acceptance_seed, 8));
  double worst = 0;
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 9;
    std::vector<complex> c(d + 1);
    for (auto& v : c) v = smv::complex_gaussian(rng);
    const polynomial p(c);
    const complex z = smv::complex_gaussian(rng);
    const smv::affine_maps m{smv::uniform_annulus(rng, 0.25, 4), smv::complex_gaussian(rng),
                             smv::uniform_annulus(rng, 0.25, 4), smv::complex_gaussian(rng)};
    const auto conj = smv::affine_conjugate(p, m);
    const auto crit_t = smv::critical_points(conj);
    const auto rep_t = smv::analyze(conj, m.pull_back(z), crit_t);
    // Q(P, z, a*zeta~ + b) against Q(P~, z~, zeta~).
    for (const auto& e : rep_t.q_values) {
      const complex q = smv::q_value(p, z, m.push_forward(e.zeta));
      worst = std::max(worst, std::abs(q - e.q) / std::abs(q));
      ++compared;
    }
  }
  return {worst <= 1e-9, fmt("%d Q values, max relative mismatch %.3g", compared, worst)};
}

outcome root_finder_round_trip() {
  smv::splitmix64 rng(smv::derive_seed(acceptance_seed, 9));
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 7;
    std::vector<complex> zetas;
    while (static_cast<int>(zetas.size()) < d - 1) {
      const complex cand = 1.5 * smv::uniform_disk(rng);
      bool separated = true;
      for (const auto& z : zetas) separated = separated && std::abs(z - cand) > 1e-2;
      if (separated) zetas.push_back(cand);
    }
    const auto found = smv::critical_points(smv::from_critical_points(zetas, d));
    if (!found.converged) return {false, fmt("solver did not converge on trial %d", trial)};
    worst = std::max(worst, oracle::multiset_distance(found.multiset(), zetas));
  }
  return {worst <= 1e-8, fmt("500 configurations, max matched distance %.3g", worst)};
}

outcome unit_circle_contour() {
  const polynomial identity{complex{0}, complex{1}};
  const auto g = smv::sample_grid(identity, {-2, 2, -2, 2}, 512, 512, 1.0);
  const auto c = smv::extract_contour(g);
  const double h = std::max(g.dx(), g.dy());
  double worst = 0;
  std::size_t vertices = 0;
  for (const auto& line : c.polylines) {
    for (const auto& [x, y] : line) {
      worst = std::max(worst, std::abs(std::hypot(x, y) - 1.0));
      ++vertices;
    }
  }
  return {vertices > 0 && worst <= 2 * h,
          fmt("%zu vertices, max deviation %.3g = %.3g spacings", vertices, worst, worst / h)};
}

}  // namespace

int main() {
  suite s;

  s.check(1, "P0 = z^d - dz gives S = T = 1 - 1/d", 1.0, smale_extremal_values);
  s.check(2, "P* = (z+1)^d - 1 gives T = 1/d", 1.0, dual_extremal_values);

  smv::campaign_config cfg;
  cfg.degrees = {2, 3, 4, 5, 6, 7, 8};
  cfg.samples_per_degree = 10000;
  cfg.distribution = smv::coefficient_distribution::unit_gaussian_complex;
  cfg.seed = acceptance_seed;
  const auto t0 = std::chrono::steady_clock::now();
  smv::campaign_summary summary;
  std::string campaign_error;
  try {
    summary = smv::run_campaign(cfg);
  } catch (const std::exception& e) {
    campaign_error = e.what();
  }
  const double campaign_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool campaign_ok = campaign_error.empty() && campaign_secs < 120;

  int analyzed = 0, skipped = 0, dual = 0, smale = 0, tischler = 0, containment = 0;
  double min_margin = INFINITY, max_s = 0, max_c1 = 0, min_ratio = INFINITY;
  for (const auto& d : summary.per_degree) {
    analyzed += d.count;
    skipped += d.skipped_critical + d.skipped_nonconverged;
    dual += d.violations_dual;
    smale += d.violations_smale;
    if (d.degree <= 4) tischler += d.tischler_violations;
    containment += d.containment_failures;
    min_margin = std::min(min_margin, d.min_dual_margin);
    max_s = std::max(max_s, d.max_s);
    max_c1 = std::max(max_c1, d.max_c1_residual);
    min_ratio = std::min(min_ratio, d.min_ratio);
  }
  const std::string run_note =
      campaign_error.empty()
          ? fmt("%d analyzed, %d skipped, campaign %.1f s", analyzed, skipped, campaign_secs)
          : "campaign failed: " + campaign_error;
  const bool have_samples = campaign_ok && analyzed > 0;

  s.report(3, "dual bound T >= 1/(d 4^d) on the degree 2..8 campaign",
           {have_samples && dual == 0,
            fmt("%d violations, min margin %.3g; ", dual, min_margin) + run_note},
           campaign_secs);
  s.report(4, "Smale bound S <= 4 on the same campaign",
           {have_samples && smale == 0, fmt("%d violations, max S %.6f; ", smale, max_s) + run_note},
           campaign_secs);
  s.report(5, "critical point product identity and quarter-ratio bound",
           {have_samples && max_c1 <= 1e-6 && min_ratio >= 0.25 - 1e-6,
            fmt("max c1 residual %.3g, min ratio %.6f; ", max_c1, min_ratio) + run_note},
           campaign_secs);
  s.report(6, "Tischler inequality for d in {2,3,4}",
           {have_samples && tischler == 0, fmt("%d violations; ", tischler) + run_note},
           campaign_secs);

  s.check(7, "search reaches 1/d (min-T) and 1 - 1/d (max-S) for d = 2,3,4", 300.0, [] {
    bool ok = true;
    std::string detail;
    for (int d = 2; d <= 4; ++d) {
      smv::search_config c;
      c.degree = d;
      c.starts = 32;
      c.seed = acceptance_seed;
      c.objective = smv::objective_kind::min_t;
      const double t = smv::run_search(c).best_value;
      c.objective = smv::objective_kind::max_s;
      const double sv = smv::run_search(c).best_value;
      ok = ok && t <= 1.0 / d + 1e-3 && sv >= 1.0 - 1.0 / d - 1e-3;
      detail += fmt("%sd=%d T=%.6f S=%.6f", d == 2 ? "" : ", ", d, t, sv);
    }
    return outcome{ok, detail};
  });

  s.check(8, "Q values are invariant under affine conjugation", 10.0, affine_invariance);
  s.check(9, "critical points recovered from their polynomial", 30.0, root_finder_round_trip);

  s.check(10, "level set of z at threshold 1 and containment on campaign samples", 0, [&] {
    auto o = unit_circle_contour();
    o.pass = o.pass && have_samples && containment == 0;
    o.detail += fmt("; containment failures %d of %d samples", containment, analyzed);
    return o;
  });

  std::printf("%d of 10 criteria failed\n", s.failures());
  return s.failures() == 0 ? 0 : 1;
}
