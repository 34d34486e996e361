#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wsmis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = wsm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("wsmis_test_" + name);
}

}  // namespace

TEST_CASE("grid specs") {
  using wsm::cli::expand;
  using wsm::cli::parse_grid_spec;
  const auto log_grid = expand(parse_grid_spec("1e-4:1e-8:log"));
  REQUIRE(log_grid.size() == 5);
  CHECK(log_grid.front() == 1e-4);
  CHECK(log_grid[2] == doctest::Approx(1e-6).epsilon(1e-14));
  CHECK(log_grid.back() == 1e-8);
  CHECK(expand(parse_grid_spec("0:1:lin")).size() == 5);
  const auto lin = expand(parse_grid_spec("0:1:lin:3"));
  CHECK(lin == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(expand(parse_grid_spec("0.2:0.2:lin:1")) == std::vector<double>{0.2});
  for (const char* bad : {"", "1:2", "1:2:cubic", "a:2:lin", "1:2:lin:0", "1:2:lin:x", "0:1:log", "1:2:lin:1", "1:2:lin:3:4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid_spec(bad), wsm::cli::UsageError);
  }
}

TEST_CASE("numbers carry 17 significant digits") {
  CHECK(wsm::cli::format_number(0.1) == "0.10000000000000001");
  CHECK(wsm::cli::format_number(0.0) == "0");
  CHECK(std::stod(wsm::cli::format_number(M_PI)) == M_PI);
}

TEST_CASE("usage and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bounds", "--c", "abc"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("phi-scan") != std::string::npos);
  CHECK(run({"bounds", "--c", "10", "--format", "xml"}).code == 2);
}

TEST_CASE("bounds command") {
  const Run r = run({"bounds", "--c", "100"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == wsm::cli::kSchemaVersion);
  CHECK(j["alpha_upper"].get<double>() == doctest::Approx(0.0725).epsilon(1e-3));
  CHECK(j["expansion_terms"].size() == 9);

  const Run a = run({"bounds", "--alpha", "0.01", "--x", "1.6"});
  REQUIRE(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["c_lower"].get<double>() == doctest::Approx(1105.034037).epsilon(1e-9));
  CHECK(ja["c_upper_simple"].get<double>() == doctest::Approx(1121.034037).epsilon(1e-9));

  CHECK(run({"bounds"}).code == 2);
  CHECK(run({"bounds", "--c", "100", "--alpha", "0.1"}).code == 2);
  const Run below = run({"bounds", "--alpha", "0.01", "--x", "1.4"});
  CHECK(below.code == 3);
  CHECK(below.err.find("4/e") != std::string::npos);
  const Run forced = run({"bounds", "--alpha", "0.01", "--x", "1.4", "--force"});
  CHECK(forced.code == 0);
  CHECK(json::parse(forced.out)["below_threshold"] == true);
  CHECK(run({"bounds", "--c", "100", "--y", "2.0"}).code == 3);
  CHECK(run({"bounds", "--c", "1.5"}).code == 3);

  const Run csv = run({"bounds", "--c", "100", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = csv_rows(csv.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "alpha");
  CHECK(rows[0].size() == rows[1].size());
}

TEST_CASE("phi-scan command") {
  const Run r = run({"phi-scan", "--alpha", "0.3", "--c", "1", "--points", "50"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == std::vector<std::string>{"zeta", "phi", "psi"});
  CHECK(std::stod(rows[1][0]) == 0.0);
  CHECK(std::stod(rows.back()[0]) == 0.3);
  int at_target = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) >= std::stod(rows[i][1]));
    if (std::stod(rows[i][0]) == 0.3 * 0.3) {
      ++at_target;
      CHECK(rows[i][1] == "0");
      CHECK(rows[i][2] == "0");
    }
  }
  CHECK(at_target == 1);

  CHECK(run({"phi-scan", "--alpha", "0.3", "--c", "1", "--points", "0"}).code == 2);
  CHECK(run({"phi-scan", "--alpha", "0.3"}).code == 2);
  CHECK(run({"phi-scan", "--alpha", "0.6", "--c", "1"}).code == 3);
  CHECK(run({"phi-scan", "--alpha", "0.3", "--c", "1", "--out", "/nonexistent-dir/x.csv"}).code == 4);

  const auto path = temp_path("scan.csv");
  REQUIRE(run({"phi-scan", "--alpha", "0.3", "--c", "1", "--points", "4", "--out", path.string()}).code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "zeta,phi,psi");
  std::filesystem::remove(path);

  const Run j = run({"phi-scan", "--alpha", "0.3", "--c", "1", "--points", "4", "--format", "json"});
  CHECK(json::parse(j.out)["zeta"].size() == 5);
}

TEST_CASE("certify command") {
  const Run r = run({"certify", "--alpha-grid", "1e-6:1e-8:log", "--c-mode", "lemma4", "--x", "1.6", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == wsm::cli::kSchemaVersion);
  REQUIRE(j["rows"].size() == 3);
  for (const auto& row : j["rows"]) {
    CHECK(row["verdict"] == "MaxAtAlphaSquared");
    CHECK(row["psi_zeta3"].get<double>() < 0);
  }

  const Run wide = run({"certify", "--alpha-grid", "1e-4:1e-8:log", "--c-mode", "lemma4", "--x", "1.6", "--format", "json"});
  const json jw = json::parse(wide.out);
  REQUIRE(jw["rows"].size() == 5);
  CHECK(jw["rows"][0]["verdict"] == "MaxElsewhere");
  CHECK(jw["rows"][1]["verdict"] == "MaxElsewhere");
  for (int i = 2; i < 5; ++i) CHECK(jw["rows"][i]["verdict"] == "MaxAtAlphaSquared");

  const Run low = run({"certify", "--alpha-grid", "1e-6:1e-8:log", "--c-mode", "lemma4", "--x", "1.4"});
  REQUIRE(low.code == 0);
  const auto rows = csv_rows(low.out);
  REQUIRE(rows.size() == 4);
  const auto col = std::find(rows[0].begin(), rows[0].end(), "psi_zeta3") - rows[0].begin();
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][col]) > 0);

  const Run l2 = run({"certify", "--alpha-grid", "1e-4:1e-8:log", "--c-mode", "lemma2", "--format", "json"});
  for (const auto& row : json::parse(l2.out)["rows"]) {
    CHECK(row["lemma2_ratio"].get<double>() >= 0.5);
    CHECK(row["lemma2_ratio"].get<double>() <= 2.0);
  }

  const Run explicit_c = run({"certify", "--alpha-grid", "0.3:0.3:lin:1", "--c-mode", "explicit", "--c", "1"});
  CHECK(explicit_c.code == 0);
  CHECK(explicit_c.out.find("NoSecondMax") != std::string::npos);

  CHECK(run({"certify", "--alpha-grid", "1e-4:1e-8:cubic"}).code == 2);
  CHECK(run({"certify", "--alpha-grid", "1e-4:1e-8:log", "--c-mode", "lemma9"}).code == 2);
  CHECK(run({"certify", "--alpha-grid", "1e-4:1e-8:log", "--c-mode", "explicit"}).code == 2);
  CHECK(run({"certify"}).code == 2);

  // One bad row is reported in place; only an all-failed sweep is an error.
  const Run mixed = run({"certify", "--alpha-grid", "0.3:0.6:lin:2", "--c-mode", "explicit", "--c", "1"});
  CHECK(mixed.code == 0);
  CHECK(csv_rows(mixed.out).size() == 3);
  CHECK(run({"certify", "--alpha-grid", "0.6:0.7:lin:2", "--c-mode", "explicit", "--c", "1"}).code == 3);
}

TEST_CASE("moments command") {
  const Run r = run({"moments", "--n", "3", "--m", "1", "--k", "1", "--mu", "1", "--brute"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == wsm::cli::kSchemaVersion);
  CHECK(j["e_x_formula"].get<double>() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(j["e_x_brute"].get<double>() == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(j["max_abs_discrepancy"].get<double>() <= 1e-13);

  const Run mc = run({"moments", "--n", "12", "--m", "12", "--k", "4", "--mu", "0.5", "--mc", "100000", "--seed", "1"});
  REQUIRE(mc.code == 0);
  const json jm = json::parse(mc.out);
  CHECK(std::abs(jm["e_x_mc"].get<double>() - jm["e_x_formula"].get<double>()) <= 4 * jm["e_x_mc_se"].get<double>());
  CHECK(std::abs(jm["e_x2_mc"].get<double>() - jm["e_x2_formula"].get<double>()) <= 4 * jm["e_x2_mc_se"].get<double>());

  CHECK(run({"moments", "--n", "12", "--m", "1", "--k", "13", "--mu", "1"}).code == 2);
  CHECK(run({"moments", "--n", "12", "--m", "1", "--k", "3"}).code == 2);
  const Run budget = run({"moments", "--n", "9", "--m", "6", "--k", "3", "--mu", "0.5", "--brute"});
  CHECK(budget.code == 3);
  CHECK(budget.err.find("budget") != std::string::npos);

  const Run one = run({"moments", "--n", "6", "--m", "3", "--k", "2", "--mu", "0.5", "--mc", "1"});
  CHECK(json::parse(one.out)["e_x_mc_se"].is_null());
  CHECK(json::parse(one.out)["mc_se_defined"] == false);

  const Run csv = run({"moments", "--n", "4", "--m", "2", "--k", "2", "--mu", "0.5", "--format", "csv"});
  CHECK(csv_rows(csv.out).size() == 2);
}

TEST_CASE("simulate command") {
  const std::vector<std::string> args = {"simulate", "--n", "40", "--c", "2", "--trials", "100", "--algo", "exact", "--seed", "42"};
  const Run first = run(args);
  const Run second = run(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);

  auto summary = [](const std::string& text) {
    std::map<std::string, std::string> out;
    const auto pos = text.find("\n\n");
    for (const auto& row : csv_rows(text.substr(pos + 2))) {
      if (row.size() == 2) out[row[0]] = row[1];
    }
    return out;
  };
  std::vector<std::string> ks_args = args;
  ks_args[8] = "karp-sipser";
  const Run ks = run(ks_args);
  REQUIRE(ks.code == 0);
  CHECK(std::stod(summary(ks.out)["median"]) <= std::stod(summary(first.out)["median"]));
  CHECK(summary(first.out).count("alpha_upper") == 1);

  for (const auto& row : csv_rows(first.out.substr(0, first.out.find("\n\n")))) {
    if (row[0] == "trial") continue;
    CHECK(row[7] == "true");
    CHECK(row[8] == "true");
  }

  CHECK(run({"simulate", "--n", "40", "--c", "2", "--algo", "unknown"}).code == 2);
  CHECK(run({"simulate", "--n", "100", "--c", "2", "--algo", "exact"}).code == 3);
  CHECK(run({"simulate", "--c", "2"}).code == 2);

  const Run timed = run({"simulate", "--n", "20", "--c", "2", "--timing"});
  CHECK(timed.out.find("wall_seconds") != std::string::npos);
  CHECK(first.out.find("wall_seconds") == std::string::npos);

  const Run j = run({"simulate", "--n", "30", "--c", "3", "--trials", "5", "--format", "json"});
  const json jj = json::parse(j.out);
  CHECK(jj["schema_version"] == wsm::cli::kSchemaVersion);
  CHECK(jj["trials"].size() == 5);
}

TEST_CASE("simulate import and export") {
  const auto path = temp_path("graph.txt");
  const Run exported = run({"simulate", "--n", "25", "--c", "3", "--algo", "exact", "--seed", "9", "--export", path.string()});
  REQUIRE(exported.code == 0);
  const Run imported = run({"simulate", "--import", path.string(), "--algo", "exact", "--seed", "9"});
  REQUIRE(imported.code == 0);
  const auto a = csv_rows(exported.out);
  const auto b = csv_rows(imported.out);
  CHECK(a[1][5] == b[1][5]);
  CHECK(a[1][3] == b[1][3]);

  CHECK(run({"simulate", "--n", "25", "--c", "3", "--trials", "2", "--export", path.string()}).code == 2);
  CHECK(run({"simulate", "--import", (path.string() + ".missing")}).code == 4);
  {
    std::ofstream bad(path);
    bad << "3 2\n0 1\n";
  }
  CHECK(run({"simulate", "--import", path.string()}).code == 4);
  std::filesystem::remove(path);
  CHECK(run({"simulate", "--n", "5", "--c", "1", "--export", "/nonexistent-dir/g.txt"}).code == 4);
}
