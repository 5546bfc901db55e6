// smv: command-line front end for the mean-value library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 z is a critical point,
// 3 root solver did not converge, 4 a verify campaign found a bound
// violation.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smv/io.hpp"
#include "smv/smv.hpp"

namespace {

enum exit_code : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_critical = 2,
  exit_not_converged = 3,
  exit_violation = 4,
};

struct global_options {
  std::uint64_t seed = 0;
  bool deterministic = false;
  std::string json_out;
  std::string csv_out;
};

struct solver_flags {
  smv::solver_config cfg;
  void attach(CLI::App* cmd) {
    cmd->add_option("--max-iter", cfg.max_iterations, "Root solver iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--residual-tol", cfg.residual_tolerance,
                    "Relative residual tolerance for convergence")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cluster-mult", cfg.cluster_radius_multiplier,
                    "Cluster radius multiplier")
        ->check(CLI::NonNegativeNumber);
  }
};

// Polynomial source shared by analyze and levelset.
struct poly_flags {
  std::string poly;
  std::string example;
  int degree = 0;
  void attach(CLI::App* cmd) {
    auto* p = cmd->add_option("--poly", poly,
                              "Coefficients as whitespace-separated re,im pairs, c_0 first");
    auto* e = cmd->add_option("--example", example, "Named polynomial: p0 or pstar")
                  ->check(CLI::IsMember({"p0", "pstar"}));
    p->excludes(e);
    cmd->add_option("--d", degree, "Degree for --example");
  }
  smv::polynomial resolve() const {
    if (!poly.empty()) return smv::parse_coefficients(poly);
    if (example.empty()) throw smv::invalid_argument("one of --poly or --example is required");
    if (degree == 0) throw smv::invalid_argument("--example needs --d");
    return *smv::named_polynomial(example, degree);
  }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

smv::json envelope(const global_options& g, const std::string& command) {
  smv::json j;
  j["schema"] = smv::json_schema_version;
  j["command"] = command;
  if (!g.deterministic) j["generated_at"] = utc_timestamp();
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw smv::invalid_argument("cannot open output file " + path);
  os << text;
  if (!os) throw smv::invalid_argument("failed writing " + path);
}

void emit(const global_options& g, const smv::json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!g.json_out.empty()) write_text_file(g.json_out, text);
}

std::vector<int> parse_degrees(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw smv::parse_error("bad degree", s);
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const int lo = to_int(item.substr(0, dash));
      const int hi = to_int(item.substr(dash + 1));
      if (hi < lo) throw smv::parse_error("empty degree range", item);
      for (int d = lo; d <= hi; ++d) out.push_back(d);
    }
  }
  if (out.empty()) throw smv::parse_error("no degrees given", text);
  return out;
}

int cmd_analyze(const global_options& g, const poly_flags& pf, const std::string& z_text,
                bool normalize, const solver_flags& sf) {
  smv::polynomial p = pf.resolve();
  smv::complex z = smv::parse_complex(z_text);
  if (p.degree() < 2) throw smv::invalid_degree("analysis needs degree >= 2");

  smv::json doc = envelope(g, "analyze");
  doc["polynomial"] = smv::format_coefficients(p);
  doc["z"] = smv::to_json(z);
  if (normalize) {
    const auto n = smv::normalize_for_theorem(p, z);
    p = n.poly;
    z = smv::complex{};
    doc["normalized_polynomial"] = smv::format_coefficients(p);
  }
  const auto crit = smv::critical_points(p, sf.cfg);
  doc["critical_points"] = smv::to_json(crit);
  if (!crit.converged) {
    std::cerr << "error: critical points did not converge\n";
    emit(g, doc);
    return exit_not_converged;
  }
  doc["report"] = smv::to_json(smv::analyze(p, z, crit));
  emit(g, doc);
  return exit_ok;
}

int cmd_verify(const global_options& g, smv::campaign_config cfg, const std::string& degrees,
               const std::string& distribution, const std::string& policy) {
  cfg.degrees = parse_degrees(degrees);
  cfg.seed = g.seed;
  cfg.distribution = *smv::parse_distribution(distribution);
  cfg.policy = *smv::parse_point_policy(policy);

  std::vector<smv::sample_row> rows;
  const auto summary =
      smv::run_campaign(cfg, g.csv_out.empty() ? nullptr : &rows);
  smv::json doc = envelope(g, "verify");
  doc["config"] = smv::to_json(cfg);
  doc["summary"] = smv::to_json(summary);
  emit(g, doc);

  if (!g.csv_out.empty()) {
    std::ostringstream os;
    os << "degree,sample,status,z_re,z_im,s_value,t_value,tischler_value,dual_margin,"
          "min_ratio,c1_residual,containment\n";
    for (const auto& r : rows) {
      const char* status = r.status == smv::sample_status::ok ? "ok"
                           : r.status == smv::sample_status::skipped_nonconverged
                               ? "skipped_nonconverged"
                               : "skipped_critical";
      os << r.degree << ',' << r.sample << ',' << status << ','
         << smv::format_double(r.z.real()) << ',' << smv::format_double(r.z.imag()) << ','
         << smv::format_double(r.s_value) << ',' << smv::format_double(r.t_value) << ','
         << smv::format_double(r.tischler_value) << ','
         << smv::format_double(r.dual_margin) << ',' << smv::format_double(r.min_ratio)
         << ',' << smv::format_double(r.c1_residual) << ',' << (r.containment ? 1 : 0)
         << '\n';
    }
    write_text_file(g.csv_out, os.str());
  }
  return summary.bounds_hold() ? exit_ok : exit_violation;
}

int cmd_search(const global_options& g, CLI::App* cmd, const std::string& config_path,
               smv::search_config flags, const std::string& objective) {
  smv::search_config cfg;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw smv::invalid_argument("cannot read config file " + config_path);
    smv::json j;
    try {
      j = smv::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
      throw smv::invalid_argument(std::string("bad JSON in config: ") + e.what());
    }
    cfg = smv::search_config_from_json(j, cfg);
  }
  // Flags given explicitly override the file.
  if (cmd->count("--d")) cfg.degree = flags.degree;
  if (cmd->count("--objective")) cfg.objective = *smv::parse_objective(objective);
  if (cmd->count("--starts")) cfg.starts = flags.starts;
  if (cmd->count("--max-evals")) cfg.max_evals = flags.max_evals;
  if (cmd->count("--simplex-scale")) cfg.simplex_scale = flags.simplex_scale;
  if (cmd->count("--min-zeta-norm")) cfg.min_zeta_norm = flags.min_zeta_norm;
  if (cmd->count("--threads")) cfg.threads = flags.threads;
  if (cmd->get_parent()->count("--seed") || config_path.empty()) cfg.seed = g.seed;
  cfg.validate();

  const auto result = smv::run_search(cfg);
  smv::json doc = envelope(g, "search");
  doc["config"] = smv::to_json(cfg);
  doc["result"] = smv::to_json(result);
  emit(g, doc);

  if (!g.csv_out.empty()) {
    std::ostringstream os;
    os << "evaluation,incumbent\n";
    for (const auto& [idx, v] : result.history) os << idx << ',' << smv::format_double(v) << '\n';
    write_text_file(g.csv_out, os.str());
  }
  return exit_ok;
}

int cmd_levelset(const global_options& g, const poly_flags& pf, const std::string& z_text,
                 const std::string& output, int nx, int ny, const std::string& window_text,
                 const solver_flags& sf) {
  if (output.empty()) throw smv::invalid_argument("levelset needs an output path (-o)");
  smv::polynomial p = pf.resolve();
  if (p.degree() < 2) throw smv::invalid_degree("levelset needs degree >= 2");
  if (!z_text.empty()) p = smv::normalize_for_theorem(p, smv::parse_complex(z_text)).poly;

  const auto crit = smv::critical_points(p, sf.cfg);
  smv::json doc = envelope(g, "levelset");
  doc["polynomial"] = smv::format_coefficients(p);
  doc["critical_points"] = smv::to_json(crit);
  if (!crit.converged) {
    std::cerr << "error: critical points did not converge\n";
    emit(g, doc);
    return exit_not_converged;
  }
  const auto threshold = smv::threshold_from(p, crit);
  smv::window w = smv::default_window(crit);
  if (!window_text.empty()) {
    std::vector<double> v;
    std::stringstream ss(window_text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(smv::parse_real(item, window_text));
    if (v.size() != 4) throw smv::parse_error("window needs xmin,xmax,ymin,ymax", window_text);
    w = {v[0], v[1], v[2], v[3]};
  }
  const auto grid = smv::sample_grid(p, w, nx, ny, threshold.value);
  const auto contours = smv::extract_contour(grid);
  const auto containment = smv::containment_check(p, crit, threshold.value);
  const auto connectivity = smv::connectivity_check(grid, crit);

  {
    std::ostringstream os;
    smv::write_svg(os, grid, contours, crit);
    write_text_file(output, os.str());
  }
  if (!g.csv_out.empty()) {
    std::ostringstream os;
    smv::write_grid_csv(os, grid);
    write_text_file(g.csv_out, os.str());
  }

  doc["R"] = threshold.R;
  doc["threshold"] = threshold.value;
  doc["window"] = {w.x_min, w.x_max, w.y_min, w.y_max};
  doc["grid"] = {nx, ny};
  std::size_t closed = 0;
  for (bool c : contours.closed) closed += c ? 1 : 0;
  doc["contour"] = {{"polylines", contours.polylines.size()}, {"closed", closed}};
  doc["containment"] = smv::to_json(containment);
  smv::json reached = smv::json::array();
  for (bool b : connectivity.reached) reached.push_back(b);
  doc["connectivity"] = {{"origin_node_inside", connectivity.origin_node_inside},
                         {"reached", reached},
                         {"all_reached", connectivity.all_reached}};
  doc["svg"] = output;
  emit(g, doc);
  return exit_ok;
}

int cmd_examples(const global_options& g, const std::string& name, int degree) {
  smv::json doc = envelope(g, "examples");
  doc["degree"] = degree;
  smv::json list = smv::json::array();
  for (const char* n : {"p0", "pstar"}) {
    if (!name.empty() && name != n) continue;
    const auto p = *smv::named_polynomial(n, degree);
    list.push_back({{"name", n}, {"coefficients", smv::format_coefficients(p)}});
  }
  doc["examples"] = list;
  emit(g, doc);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-value quantities of complex polynomials"};
  app.require_subcommand(1);
  app.fallthrough();

  global_options g;
  app.add_option("--seed", g.seed, "Seed for all random streams");
  app.add_flag("--deterministic", g.deterministic, "Omit the timestamp from JSON output");
  app.add_option("--json-out", g.json_out, "Also write the JSON document to this path");
  app.add_option("--csv-out", g.csv_out, "CSV side output (rows, history or grid)");

  poly_flags analyze_poly;
  std::string analyze_z = "0,0";
  bool analyze_normalize = false;
  solver_flags analyze_solver;
  auto* analyze = app.add_subcommand("analyze", "Mean-value report for (P, z)");
  analyze_poly.attach(analyze);
  analyze->add_option("--z", analyze_z, "Evaluation point re,im");
  analyze->add_flag("--normalize", analyze_normalize,
                    "Move (P, z) to monic form with P(0) = 0 at z = 0 first");
  analyze_solver.attach(analyze);

  smv::campaign_config campaign;
  std::string degrees = "2-8";
  std::string distribution = "unit-gaussian-complex";
  std::string policy = "origin-after-normalization";
  solver_flags verify_solver;
  auto* verify = app.add_subcommand("verify", "Random verification campaign");
  verify->add_option("--degrees", degrees, "Degrees, e.g. 2-8 or 2,3,4");
  verify->add_option("--samples", campaign.samples_per_degree, "Samples per degree")
      ->check(CLI::PositiveNumber);
  verify->add_option("--distribution", distribution)
      ->check(CLI::IsMember({"unit-gaussian-complex", "unit-disk-uniform"}));
  verify->add_option("--point-policy", policy)
      ->check(CLI::IsMember({"origin-after-normalization", "random-non-critical"}));
  verify->add_option("--threads", campaign.threads, "Worker threads (0: all cores)");
  verify_solver.attach(verify);

  smv::search_config search_flags;
  std::string objective = "max-S";
  std::string config_path;
  auto* search = app.add_subcommand("search", "Extremal search over critical points");
  search->add_option("--config", config_path, "SearchConfig JSON file");
  search->add_option("--d", search_flags.degree, "Degree");
  search->add_option("--objective", objective)
      ->check(CLI::IsMember({"max-S", "min-T", "max-Tischler-excess"}));
  search->add_option("--starts", search_flags.starts);
  search->add_option("--max-evals", search_flags.max_evals, "Evaluation budget per start");
  search->add_option("--simplex-scale", search_flags.simplex_scale);
  search->add_option("--min-zeta-norm", search_flags.min_zeta_norm);
  search->add_option("--threads", search_flags.threads);

  poly_flags level_poly;
  std::string level_z;
  std::string level_output;
  std::string level_window;
  int nx = 512, ny = 512;
  solver_flags level_solver;
  auto* levelset = app.add_subcommand("levelset", "Plot the sublevel set |P| <= R^d");
  level_poly.attach(levelset);
  levelset->add_option("--z", level_z, "Normalize at this point first");
  levelset->add_option("-o,--output", level_output, "SVG output path");
  levelset->add_option("--nx", nx)->check(CLI::Range(2, 1 << 14));
  levelset->add_option("--ny", ny)->check(CLI::Range(2, 1 << 14));
  levelset->add_option("--window", level_window, "xmin,xmax,ymin,ymax");
  level_solver.attach(levelset);

  std::string example_name;
  int example_degree = 0;
  auto* examples = app.add_subcommand("examples", "Print the named extremal polynomials");
  examples->add_option("--name", example_name)->check(CLI::IsMember({"p0", "pstar"}));
  examples->add_option("--d", example_degree, "Degree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*analyze) {
      return cmd_analyze(g, analyze_poly, analyze_z, analyze_normalize, analyze_solver);
    }
    if (*verify) return cmd_verify(g, campaign, degrees, distribution, policy);
    if (*search) return cmd_search(g, search, config_path, search_flags, objective);
    if (*levelset) {
      return cmd_levelset(g, level_poly, level_z, level_output, nx, ny, level_window,
                          level_solver);
    }
    if (*examples) return cmd_examples(g, example_name, example_degree);
  } catch (const smv::critical_point_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_critical;
  } catch (const smv::not_converged_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_not_converged;
  } catch (const smv::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
