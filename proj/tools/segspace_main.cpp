// Command-line front end: batch verification runs, geodesic integration,
// stratification diagrams, and single-segment reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segspace/checks.hpp"
#include "segspace/geodesics.hpp"
#include "segspace/orbifold.hpp"
#include "segspace/segment.hpp"

namespace {

using namespace segspace;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::pair<int, int> parse_range(const std::string& s, int single) {
  if (s.empty()) return {single, single};
  auto dots = s.find("..");
  if (dots == std::string::npos) return {std::stoi(s), std::stoi(s)};
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

RVec parse_list(const std::string& s) {
  RVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

int cmd_check(int n, const std::string& range, std::uint64_t seed, const std::string& out) {
  auto [lo, hi] = parse_range(range, n);
  if (lo < 3 || hi > 40 || lo > hi) {
    std::cerr << "check: n must lie in 3..40\n";
    return 2;
  }
  std::vector<CheckReport> reports;
  bool ok = true;
  std::string first_fail;
  for (int m = lo; m <= hi; ++m) {
    reports.push_back(run_checks(m, seed));
    if (!reports.back().all_pass && ok) {
      ok = false;
      for (const CheckItem& it : reports.back().items)
        if (!it.pass) {
          first_fail = "n=" + std::to_string(m) + " " + it.name;
          break;
        }
    }
  }
  write_output(check_reports_json(reports), out);
  if (!ok) {
    std::cerr << "check: first failing invariant: " << first_fail << "\n";
    return 1;
  }
  return 0;
}

int cmd_geodesic(const std::string& space_name, int n, const std::string& init,
                 const std::string& vel, double dt, double t_final, int trials,
                 std::uint64_t seed, bool halve, const std::string& out,
                 const std::string& summary_path) {
  Space space = (space_name == "L") ? Space::L : Space::M;
  int dim = n + (space == Space::L ? 2 : 0);
  if (trials > 1) {
    SurveyReport rep = geodesic_survey(space, n, trials, t_final, dt, seed);
    write_output(survey_json(rep), out);
    return 0;
  }
  RVec q0, v0;
  if (!init.empty()) {
    q0 = parse_list(init);
    v0 = parse_list(vel);
    if (static_cast<int>(q0.size()) != dim || static_cast<int>(v0.size()) != dim) {
      std::cerr << "geodesic: expected " << dim << " components for --init/--vel\n";
      return 2;
    }
  } else {
    Rng rng(seed);
    q0.assign(static_cast<std::size_t>(dim), 0.0);
    v0 = q0;
    do {
      q0[0] = rng.uniform(-1.5, 1.5);
      q0[1] = rng.uniform(-1.5, 1.5);
    } while (std::hypot(q0[0], q0[1]) < 0.4);
    for (int i = 2; i < dim; ++i) q0[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < dim; ++i) v0[i] = rng.uniform(-1.0, 1.0);
  }
  auto drift_of = [](const GeodesicTrajectory& tr) {
    double d = 0.0;
    for (std::size_t i = 0; i < tr.steps(); ++i) {
      d = std::max(d, std::abs(tr.k0[i] - tr.k0[0]));
      d = std::max(d, std::abs(tr.k1[i] - tr.k1[0]));
      for (std::size_t j = 0; j < tr.kj[i].size(); ++j)
        d = std::max(d, std::abs(tr.kj[i][j] - tr.kj[0][j]));
    }
    return d;
  };
  GeodesicTrajectory tr = integrate_geodesic(space, n, q0, v0, t_final, dt);
  write_output(trajectory_csv(tr), out);
  char buf[256];
  std::string summary = "{\"n\": " + std::to_string(n) + ", \"space\": \"" +
                        (space == Space::L ? "L" : "M") + "\"";
  std::snprintf(buf, sizeof buf, ", \"dt\": %.17g, \"t_final\": %.17g", dt, t_final);
  summary += buf;
  std::snprintf(buf, sizeof buf, ", \"max_drift\": %.17g", drift_of(tr));
  summary += buf;
  summary += std::string(", \"status\": \"") +
             (tr.status == TrajStatus::Completed
                  ? "completed"
                  : (tr.status == TrajStatus::ChartExit ? "chart_exit" : "metric_ill_conditioned")) +
             "\"";
  if (halve) {
    GeodesicTrajectory half = integrate_geodesic(space, n, q0, v0, t_final, dt / 2.0);
    double d1 = drift_of(tr), d2 = drift_of(half);
    std::snprintf(buf, sizeof buf, ", \"max_drift_half_dt\": %.17g, \"drift_ratio\": %.17g", d2,
                  d2 > 0.0 ? d1 / d2 : 0.0);
    summary += buf;
  }
  summary += "}";
  if (!summary_path.empty())
    write_output(summary, summary_path);
  else
    std::cerr << summary << "\n";
  return tr.status == TrajStatus::Completed ? 0 : 1;
}

int cmd_strata(int n, const std::string& format, const std::string& out) {
  Stratification s = stratification(n);
  write_output(format == "dot" ? stratification_dot(s) : stratification_json(s), out);
  return 0;
}

int cmd_segment(const std::string& path, double tol, const std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "segment: cannot open " << path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  PolyPoint Z;
  try {
    Z = polypoint_from_json(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "segment: JSON parse error at line " << line_of_offset(text, e.byte) << ": "
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "segment: " << e.what() << "\n";
    return 2;
  }
  nlohmann::ordered_json rep;
  rep["n"] = Z.n();
  rep["tol"] = tol;
  bool segment = is_n_segment(Z, tol);
  rep["is_segment"] = segment;
  if (segment) {
    auto [A, b] = split_L(Z, tol);
    bool degenerate = max_abs(A.vertices) <= tol * std::max(1.0, max_abs(Z.vertices));
    rep["degenerate"] = degenerate;
    rep["split"] = {{"base", {b.real(), b.imag()}},
                    {"anchored", nlohmann::json::parse(polypoint_to_json(A))["vertices"]}};
    if (!degenerate) {
      auto es = ends(Z, tol);
      rep["ends"] = es;
      rep["normalized"] = nlohmann::json::parse(polypoint_to_json(normalize_ends(Z, tol)))["vertices"];
      MappingTorusCoord c = psi_inv(A, tol);
      rep["mapping_torus"] = {{"profile", c.profile}, {"theta", c.theta}};
    }
  }
  write_output(rep.dump(2), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometry of polygons degenerated to segments"};
  app.require_subcommand(1);

  int n = 3;
  std::string range, out, format = "json", space_name = "M", init, vel, summary_path, input;
  std::uint64_t seed = 20240817;
  double dt = 1e-3, t_final = 1.0, tol = kCollinearTol;
  int trials = 1;
  bool halve = false;

  auto* check = app.add_subcommand("check", "run the invariant suites");
  check->add_option("--n", n, "single n");
  check->add_option("--n-range", range, "range A..B");
  check->add_option("--seed", seed, "rng seed");
  check->add_option("--out", out, "output path (stdout when absent)");

  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic and report drift");
  geo->add_option("--space", space_name, "M or L")->check(CLI::IsMember({"M", "L"}));
  geo->add_option("--n", n, "number of vertices")->check(CLI::Range(3, 64));
  geo->add_option("--init", init, "comma-separated chart position");
  geo->add_option("--vel", vel, "comma-separated chart velocity");
  geo->add_option("--dt", dt, "step size");
  geo->add_option("--t-final", t_final, "integration time");
  geo->add_option("--trials", trials, "random survey when > 1");
  geo->add_option("--seed", seed, "rng seed");
  geo->add_flag("--halve", halve, "also run at dt/2 and report the drift ratio");
  geo->add_option("--out", out, "trajectory CSV (or survey JSON) path");
  geo->add_option("--summary", summary_path, "summary JSON path (stderr when absent)");

  auto* strata = app.add_subcommand("strata", "emit the fixed-locus stratification");
  strata->add_option("--n", n, "number of vertices")->check(CLI::Range(4, 4096));
  strata->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  strata->add_option("--out", out, "output path (stdout when absent)");

  auto* seg = app.add_subcommand("segment", "analyze a polygon JSON file");
  seg->add_option("--in", input, "input JSON path")->required();
  seg->add_option("--tol", tol, "collinearity tolerance");
  seg->add_option("--out", out, "output path (stdout when absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(n, range, seed, out);
    if (*geo) return cmd_geodesic(space_name, n, init, vel, dt, t_final, trials, seed, halve, out,
                                  summary_path);
    if (*strata) return cmd_strata(n, format, out);
    if (*seg) return cmd_segment(input, tol, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
