#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "segspace/checks.hpp"
#include "segspace/geodesics.hpp"
#include "segspace/orbifold.hpp"
#include "segspace/segment.hpp"

using namespace segspace;

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("trajectory csv layout") {
  GeodesicTrajectory tr =
      integrate_geodesic(Space::M, 4, {1.0, 0.1, 0.5, -0.2}, {0.2, 1.0, 0.1, 0.3}, 0.05, 1e-2);
  std::string csv = trajectory_csv(tr);
  std::stringstream ss(csv);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "t,x,y,r3,r4,k0,k1,k3,k4");
  std::string row;
  int rows = 0;
  while (std::getline(ss, row)) {
    CHECK(split_line(row).size() == 9);
    ++rows;
  }
  CHECK(rows == static_cast<int>(tr.steps()));

  GeodesicTrajectory trl = integrate_geodesic(Space::L, 3, {1.0, 0.1, 0.5, 0.0, 0.2},
                                              {0.2, 1.0, 0.1, 0.3, -0.1}, 0.05, 1e-2);
  std::string csvl = trajectory_csv(trl);
  std::stringstream ssl(csvl);
  std::getline(ssl, header);
  CHECK(header == "t,x,y,r3,u,v,k0,k1,k3");
}

TEST_CASE("csv is full precision and reproducible") {
  auto run = [] {
    GeodesicTrajectory tr =
        integrate_geodesic(Space::M, 3, {1.0, 0.3, 0.7}, {0.7, 1.1, 0.58}, 0.2, 1e-3);
    return trajectory_csv(tr);
  };
  std::string a = run(), b = run();
  CHECK(a == b);
  CHECK(a.find('.') != std::string::npos);
  // 17 significant digits survive a round trip
  std::stringstream ss(a);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  std::getline(ss, row);
  double x = std::stod(split_line(row)[1]);
  GeodesicTrajectory tr =
      integrate_geodesic(Space::M, 3, {1.0, 0.3, 0.7}, {0.7, 1.1, 0.58}, 0.2, 1e-3);
  CHECK(x == tr.q[1][0]);
}

TEST_CASE("survey report json is deterministic") {
  SurveyReport r1 = geodesic_survey(Space::M, 3, 6, 0.3, 2e-3, 777);
  SurveyReport r2 = geodesic_survey(Space::M, 3, 6, 0.3, 2e-3, 777);
  CHECK(survey_json(r1) == survey_json(r2));
  CHECK(survey_json(r1).find("\"seed\": 777") != std::string::npos);
  SurveyReport r3 = geodesic_survey(Space::M, 3, 6, 0.3, 2e-3, 778);
  CHECK(survey_json(r1) != survey_json(r3));
}

TEST_CASE("check reports cover every module and pass") {
  std::vector<CheckReport> reports;
  for (int n : {3, 4, 5}) reports.push_back(run_checks(n, 2024));
  for (const CheckReport& rep : reports) {
    CHECK(rep.all_pass);
    std::vector<std::string> names;
    for (const CheckItem& it : rep.items) names.push_back(it.name);
    for (const char* want :
         {"psi_round_trip", "chart_round_trip", "containment_predicate_vs_oracle",
          "geodesic_conservation", "conjugation_residual", "fixed_sets_cross_method"})
      CHECK(std::find(names.begin(), names.end(), want) != names.end());
  }
  std::string json = check_reports_json(reports);
  CHECK(json.find("\"all_pass\": true") != std::string::npos);
  CHECK(json == check_reports_json(reports));

  CheckReport r20 = run_checks(20, 2024);
  CHECK(r20.strata_nodes == std::vector<int>{1, 2, 4, 5, 10, 20});
}
