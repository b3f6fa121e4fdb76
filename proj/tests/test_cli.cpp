#include "mcc/cli.hpp"
#include "mcc/csv.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mcc;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kData = MCC_DATA_DIR;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mcc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("mcc_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cluster a counts table") {
  const auto r = run({"cluster", "--counts", kData + "/table1_counts.csv"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["K"] == 2);
  CHECK(j["modes"][0]["cell"] == json::array({"America", "Christianity"}));
  CHECK(j["modes"][1]["cell"] == json::array({"Asia-Pacific", "Islam"}));
  CHECK(j["tree"]["leaves"] == 2);
  CHECK(j["cells"].size() == 12);
  CHECK(j["warning"].is_null());
  CHECK(r.err.empty());
}

TEST_CASE("labels CSV for observations") {
  const auto path = temp_file("titanic_labels.csv");
  const auto r = run({"cluster", "--obs", kData + "/titanic.csv", "--labels-csv", path.string()});
  REQUIRE(r.code == kExitOk);
  const auto records = csv::parse_file(path.string());
  fs::remove(path);
  REQUIRE(records.size() == 2202);
  CHECK(records[0] == csv::Record{"class", "sex", "survived", "mcc_cluster"});
  CHECK(json::parse(r.out)["labels"].size() == 2201);

  CHECK(run({"cluster", "--counts", kData + "/titanic_counts.csv", "--labels-csv", path.string()}).code ==
        kExitInput);
}

TEST_CASE("warning on an independent table") {
  const auto r = run({"cluster", "--counts", kData + "/independent_counts.csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.rfind("warning: low clusterability evidence", 0) == 0);
  const auto j = json::parse(r.out);
  CHECK(j["degenerate"] == true);
  CHECK(j["K"] == 4);

  const auto always = run({"cluster", "--counts", kData + "/titanic_counts.csv", "--warn-factor", "inf"});
  CHECK(always.code == kExitOk);
  CHECK(always.err.find("warning:") != std::string::npos);
}

TEST_CASE("deviance") {
  const auto r = run({"deviance", "--counts", kData + "/berkeley_counts.csv"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["statistic"].get<double>() - 2097.67) <= 0.01);
  CHECK(j["df"] == 16);
  CHECK(j["n"] == 4526);
}

TEST_CASE("evaluate") {
  const auto path = temp_file("labels.csv");
  {
    std::ofstream f(path);
    f << "id,label\n1,a\n2,a\n3,b\n4,b\n";
  }
  const auto r = run({"evaluate", "--a", path.string(), "--b", path.string()});
  fs::remove(path);
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["fowlkes_mallows"] == 1.0);
  CHECK(j["adjusted_rand"] == 1.0);
  CHECK(j["n"] == 4);
}

TEST_CASE("simulate is reproducible") {
  const std::vector<std::string> args{"simulate", "--theta", "0.8", "--n", "40", "--seed", "5"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("X1,X2,cluster\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 81);
  CHECK(run({"simulate", "--theta", "0.3", "--n", "40", "--seed", "5"}).code == kExitInput);
}

TEST_CASE("DOT output") {
  const auto graph = run({"graph", "--counts", kData + "/table1_counts.csv"});
  REQUIRE(graph.code == kExitOk);
  CHECK(graph.out == run({"graph", "--counts", kData + "/table1_counts.csv"}).out);
  CHECK(graph.out.rfind("digraph category_graph {", 0) == 0);
  CHECK(std::count(graph.out.begin(), graph.out.end(), '>') == 30);

  const auto forest = run({"graph", "--counts", kData + "/table1_counts.csv", "--forest"});
  REQUIRE(forest.code == kExitOk);
  std::istringstream lines(forest.out);
  int nodes = 0, edges = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.find("->") != std::string::npos) ++edges;
    else if (line.find("[label=") != std::string::npos) ++nodes;
  }
  CHECK(nodes == 12);
  CHECK(edges == 10);
}

TEST_CASE("tree") {
  const auto r = run({"tree", "--counts", kData + "/table1_counts.csv"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["leaves"] == 2);
  CHECK(j["roots"].size() == 2);
}

TEST_CASE("benchmark") {
  const auto r = run({"benchmark", "--thetas", "0.6,0.95", "--sizes", "20", "--replicates", "10",
                      "--seed", "1", "--threads", "2"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["cells"].size() == 2);
  CHECK(j["rng"] == "mt19937_64/splitmix64/v1");
}

TEST_CASE("usage and input errors") {
  CHECK(run({"cluster", "--counts", kData + "/does_not_exist.csv"}).code == kExitInput);
  CHECK(run({"cluster"}).code == kExitInput);
  CHECK(run({"cluster", "--counts", "a.csv", "--obs", "b.csv"}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"cluster", "--counts", kData + "/table1_counts.csv", "--tie", "random"}).code == kExitInput);
  CHECK(run({"cluster", "--counts", kData + "/table1_counts.csv", "--tie", "random", "--seed", "3"}).code ==
        kExitOk);
  CHECK(run({"cluster", "--counts", kData + "/table1_counts.csv", "--rule", "sideways"}).code == kExitInput);
  CHECK(run({"simulate", "--theta", "0.8", "--n", "10"}).code == kExitInput);
}

TEST_CASE("installed binary writes --out files") {
  const auto path = temp_file("out.json");
  const std::string command = std::string(MCC_CLI_PATH) + " cluster --counts " + kData +
                              "/table1_counts.csv --out " + path.string();
  CHECK(std::system(command.c_str()) == 0);
  CHECK(json::parse(slurp(path))["K"] == 2);
  fs::remove(path);

  const std::string missing = std::string(MCC_CLI_PATH) + " deviance --counts /nonexistent.csv 2>/dev/null";
  const int status = std::system(missing.c_str());
  CHECK(WEXITSTATUS(status) == kExitInput);
}
