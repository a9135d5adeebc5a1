#include <doctest.h>

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sasaki");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sasaki::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

}  // namespace

TEST_CASE("geodesic subcommand") {
  const auto r = run({"geodesic", "--model", "heisenberg", "--n", "1", "--dir", "1,0", "--z", "1",
                      "--T", "3.1416", "--steps", "100"});
  REQUIRE(r.code == 0);
  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 101);  // header plus samples
  CHECK(r.out.rfind("# sasaki ", 0) == 0);
  std::istringstream last(rows.back());
  std::vector<double> cols;
  for (std::string cell; std::getline(last, cell, ',');) cols.push_back(std::stod(cell));
  CHECK(cols[1] == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
  CHECK(cols[2] == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(cols[3] == doctest::Approx(1.5708).epsilon(1e-4));
}

TEST_CASE("hopf geodesic in JSON") {
  const auto r = run({"geodesic", "--model", "hopf", "--n", "1", "--dir", "0,1", "--z", "0.5",
                      "--T", "2", "--steps", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["model"] == "hopf");
  REQUIRE(doc["rows"].size() == 5);
  for (const auto& row : doc["rows"]) CHECK(row["norm"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("usage errors exit with 2") {
  auto r = run({"geodesic", "--dir", "1,0", "--T", "1"});
  CHECK(r.code == 2);
  const auto e = nlohmann::json::parse(r.err);
  CHECK(e["error"] == "usage");
  CHECK(e["message"].get<std::string>().find("--z") != std::string::npos);

  CHECK(run({"geodesic", "--dir", "1,0,0", "--z", "1", "--T", "1"}).code == 2);
  CHECK(run({"volume", "--model", "torus"}).code == 2);
  CHECK(run({"volume", "--model", "heisenberg", "--reference", "hopf"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("conjugate subcommand") {
  auto r = run({"conjugate", "--model", "heisenberg", "--z", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  auto row = nlohmann::json::parse(r.out)["rows"][0];
  CHECK(row["t_conj_numeric"].get<double>() == doctest::Approx(3.141592653589793).epsilon(1e-8));
  CHECK(row["bound1"].get<double>() == doctest::Approx(3.141592653589793));
  CHECK(row["equal"] == true);

  r = run({"conjugate", "--model", "hopf", "--z", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  row = nlohmann::json::parse(r.out)["rows"][0];
  CHECK(row["t_conj_numeric"].get<double>() == doctest::Approx(3.141592653589793).epsilon(1e-8));

  r = run({"conjugate", "--model", "constant", "--k1", "-1", "--k2", "-1", "--z", "0"});
  REQUIRE(r.code == 0);
  CHECK(data_lines(r.out)[1].find("none") != std::string::npos);
}

TEST_CASE("volume with a reference") {
  const auto r = run({"volume", "--model", "hopf", "--n", "1", "--R", "1", "--reference",
                      "heisenberg", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto row = nlohmann::json::parse(r.out)["rows"][0];
  CHECK(row["ratio"].get<double>() <= 1.0);
  CHECK(row["ok"] == true);
}

TEST_CASE("output does not depend on the thread count") {
  const std::vector<std::string> args{"laplacian", "--samples", "40", "--seed", "42"};
  setenv("SASAKI_THREADS", "1", 1);
  const auto a = run(args);
  setenv("SASAKI_THREADS", "4", 1);
  const auto b = run(args);
  unsetenv("SASAKI_THREADS");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  const std::vector<std::string> mc{"volume", "--model", "hopf", "--method", "monte-carlo",
                                    "--samples", "4000", "--R", "0.5,1"};
  setenv("SASAKI_THREADS", "1", 1);
  const auto c = run(mc);
  setenv("SASAKI_THREADS", "3", 1);
  const auto d = run(mc);
  unsetenv("SASAKI_THREADS");
  CHECK(c.out == d.out);
}

TEST_CASE("config file with command-line override") {
  const auto path = std::filesystem::temp_directory_path() / "sasaki_cli_test.ini";
  {
    std::ofstream f(path);
    f << "model=hopf\nz=0.5\nformat=json\n";
  }
  auto r = run({"conjugate", "--config", path.string()});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["model"] == "hopf");
  CHECK(doc["rows"][0]["z"].get<double>() == 0.5);

  r = run({"conjugate", "--config", path.string(), "--z", "1"});
  REQUIRE(r.code == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["rows"][0]["z"].get<double>() == 1.0);

  {
    std::ofstream f(path);
    f << "modle=hopf\n";
  }
  CHECK(run({"conjugate", "--config", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("verify subcommand") {
  const auto r = run({"verify", "--suite", "riccati"});
  CHECK(r.code == 0);
  CHECK(r.out.find("riccati,true") != std::string::npos);
}
