#pragma once

// Wire formats: coefficient strings and JSON documents.
//
// Coefficients are whitespace-separated "re,im" pairs in ascending order,
// c_0 first. "0,0 -5,0 0,0 0,0 0,0 1,0" is z^5 - 5z.

#include <charconv>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smv/campaign.hpp"
#include "smv/error.hpp"
#include "smv/format.hpp"
#include "smv/levelset.hpp"
#include "smv/meanvalue.hpp"
#include "smv/polynomial.hpp"
#include "smv/roots.hpp"
#include "smv/search.hpp"

namespace smv {

inline constexpr int json_schema_version = 1;

class parse_error : public invalid_argument {
 public:
  parse_error(const std::string& what, std::string token)
      : invalid_argument(what + ": '" + token + "'"), token_(std::move(token)) {}
  [[nodiscard]] const std::string& token() const { return token_; }

 private:
  std::string token_;
};

inline double parse_real(std::string_view text, std::string_view token) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    throw parse_error("bad number", std::string(token));
  }
  return v;
}

// "re,im"
inline complex parse_complex(std::string_view token) {
  const auto comma = token.find(',');
  if (comma == std::string_view::npos || token.find(',', comma + 1) != std::string_view::npos) {
    throw parse_error("expected a re,im pair", std::string(token));
  }
  return {parse_real(token.substr(0, comma), token), parse_real(token.substr(comma + 1), token)};
}

inline std::string format_complex(const complex& z) {
  return format_double(z.real()) + "," + format_double(z.imag());
}

inline polynomial parse_coefficients(std::string_view text) {
  std::vector<complex> coeffs;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    if (end > pos) coeffs.push_back(parse_complex(text.substr(pos, end - pos)));
    pos = end;
  }
  if (coeffs.empty()) throw parse_error("no coefficients given", std::string(text));
  return polynomial(std::move(coeffs));
}

inline std::string format_coefficients(const polynomial& p) {
  std::string out;
  for (const auto& c : p.coefficients()) {
    if (!out.empty()) out += ' ';
    out += format_complex(c);
  }
  return out;
}

using json = nlohmann::ordered_json;

inline json to_json(const complex& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const std::vector<complex>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(to_json(z));
  return a;
}

inline json to_json(const root_set& rs) {
  json roots = json::array();
  for (const auto& r : rs.roots) {
    roots.push_back({{"location", to_json(r.location)},
                     {"multiplicity", r.multiplicity},
                     {"residual", r.residual},
                     {"cluster_radius", r.cluster_radius}});
  }
  return {{"roots", roots},
          {"degree", rs.degree},
          {"converged", rs.converged},
          {"iterations", rs.iterations}};
}

inline json to_json(const mean_value_report& rep) {
  json q = json::array();
  for (const auto& e : rep.q_values) {
    q.push_back({{"zeta", to_json(e.zeta)},
                 {"q", to_json(e.q)},
                 {"abs_q", e.abs_q},
                 {"multiplicity", e.multiplicity}});
  }
  json j = {{"degree", rep.degree},
            {"q_values", q},
            {"s_value", rep.s_value},
            {"s_argmin", rep.s_argmin},
            {"t_value", rep.t_value},
            {"t_argmax", rep.t_argmax},
            {"tischler_value", rep.tischler_value},
            {"smale_margin", rep.smale_margin},
            {"dual_bound", rep.dual_bound},
            {"dual_margin", rep.dual_margin},
            {"tischler_bound", rep.tischler_bound}};
  if (rep.proof) {
    const auto& p = *rep.proof;
    j["proof"] = {{"R", p.R},
                  {"R_argmax", p.R_argmax},
                  {"ratios", p.ratios},
                  {"min_ratio", p.min_ratio},
                  {"c1_residual", p.c1_residual},
                  {"lower_bound", p.lower_bound}};
  } else {
    j["proof"] = nullptr;
  }
  return j;
}

// JSON has no infinity; empty aggregates are emitted as null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const campaign_summary& s) {
  json rows = json::array();
  for (const auto& d : s.per_degree) {
    rows.push_back({{"degree", d.degree},
                    {"count", d.count},
                    {"violations_smale", d.violations_smale},
                    {"violations_dual", d.violations_dual},
                    {"min_dual_margin", finite_or_null(d.min_dual_margin)},
                    {"max_s", d.max_s},
                    {"min_t", finite_or_null(d.min_t)},
                    {"tischler_violations", d.tischler_violations},
                    {"max_tischler_excess", finite_or_null(d.max_tischler_excess)},
                    {"skipped_nonconverged", d.skipped_nonconverged},
                    {"skipped_critical", d.skipped_critical},
                    {"proof_violations", d.proof_violations},
                    {"max_c1_residual", d.max_c1_residual},
                    {"min_ratio", finite_or_null(d.min_ratio)},
                    {"containment_failures", d.containment_failures}});
  }
  return {{"per_degree", rows}, {"bounds_hold", s.bounds_hold()}};
}

inline json to_json(const campaign_config& c) {
  return {{"degrees", c.degrees},
          {"samples_per_degree", c.samples_per_degree},
          {"coefficient_distribution", std::string(to_string(c.distribution))},
          {"seed", c.seed},
          {"point_policy", std::string(to_string(c.policy))}};
}

inline json to_json(const search_config& c) {
  return {{"degree", c.degree},
          {"objective", std::string(to_string(c.objective))},
          {"starts", c.starts},
          {"seed", c.seed},
          {"max_evals", c.max_evals},
          {"simplex_scale", c.simplex_scale},
          {"min_zeta_norm", c.min_zeta_norm}};
}

inline json to_json(const search_result& r, bool with_history = true) {
  json j = {{"best_value", r.best_value},
            {"best_zetas", to_json(r.best_zetas)},
            {"best_polynomial", format_coefficients(r.best_polynomial)},
            {"evaluations", r.evaluations},
            {"best_start", r.best_start},
            {"per_start_bests", r.per_start_bests},
            {"observed_min", finite_or_null(r.observed_min)},
            {"observed_max", finite_or_null(r.observed_max)}};
  if (with_history) {
    json h = json::array();
    for (const auto& [idx, v] : r.history) h.push_back(json::array({idx, v}));
    j["history"] = h;
  }
  return j;
}

inline json to_json(const containment_report& c) {
  json pts = json::array();
  for (std::size_t k = 0; k < c.critical_points.size(); ++k) {
    pts.push_back({{"zeta", to_json(c.critical_points[k])},
                   {"abs_p", c.critical_values[k]},
                   {"inside", static_cast<bool>(c.critical_inside[k])}});
  }
  return {{"threshold", c.threshold},
          {"origin_abs_p", c.origin_value},
          {"origin_inside", c.origin_inside},
          {"critical_points", pts},
          {"all_inside", c.all_inside}};
}

/**
 * Overlays the keys present in `j` onto `base`. Unknown keys and
 * ill-typed values are rejected.
 */
inline search_config search_config_from_json(const json& j, search_config base = {}) {
  if (!j.is_object()) throw invalid_argument("search config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "degree") {
        base.degree = value.get<int>();
      } else if (key == "objective") {
        const auto k = parse_objective(value.get<std::string>());
        if (!k) throw parse_error("unknown objective", value.get<std::string>());
        base.objective = *k;
      } else if (key == "starts") {
        base.starts = value.get<int>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "max_evals") {
        base.max_evals = value.get<int>();
      } else if (key == "simplex_scale") {
        base.simplex_scale = value.get<double>();
      } else if (key == "min_zeta_norm") {
        base.min_zeta_norm = value.get<double>();
      } else if (key == "threads") {
        base.threads = value.get<int>();
      } else {
        throw parse_error("unknown search config key", key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("bad search config: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace smv
