#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(BWCC_TEST_DIR) / "cli_work";

int run(const std::string& args, const std::string& env = "") {
  fs::create_directories(kWork);
  const std::string cmd = env + " \"" BWCC_CLI_PATH "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string path(const std::string& name) { return (kWork / name).string(); }

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load(const std::string& file) { return nlohmann::json::parse(slurp(file)); }

bool is_regular_pentagon(const nlohmann::json& doc) {
  if (doc["n"] != 5 || doc["hull_class"] != "strictly_convex") return false;
  std::vector<double> d;
  const auto& p = doc["positions"];
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      d.push_back(std::hypot(p[i][0].get<double>() - p[j][0].get<double>(),
                             p[i][1].get<double>() - p[j][1].get<double>()));
  std::sort(d.begin(), d.end());
  return std::abs(d[4] - d[0]) < 1e-9 * d[0] && std::abs(d[9] - d[5]) < 1e-9 * d[5] &&
         std::abs(d[5] / d[0] - std::numbers::phi) < 1e-9;
}

}  // namespace

TEST_CASE("solve finds the pentagon and verify accepts the output") {
  REQUIRE(run("solve --masses 1,1,1,1,1 --trials 64 --seed 42 --out " + path("five.json")) == 0);
  const auto docs = load(path("five.json"));
  REQUIRE(docs.is_array());
  bool pentagon = false;
  for (const auto& d : docs) {
    pentagon = pentagon || is_regular_pentagon(d);
    CHECK(d["normalized"] == true);
    CHECK(d["spectrum"].is_null());
    CHECK(d["williams"].is_null());
    CHECK(d["gradient_residual"].get<double>() <= 1e-12);
  }
  CHECK(pentagon);

  REQUIRE(run("verify " + path("five.json") + " --report " + path("five_report.json")) == 0);
  const auto rep = load(path("five_report.json"));
  REQUIRE(rep.size() == docs.size());
  for (std::size_t k = 0; k < rep.size(); ++k) {
    CHECK(rep[k]["williams"]["verdict"] == true);
    CHECK(rep[k]["williams"]["nu"].get<double>() > 0.0);
    CHECK(rep[k]["spectrum"]["eigenvalues"].size() == 5);
    const double stored = docs[k]["lambda"].get<double>();
    CHECK(std::abs(rep[k]["lambda"].get<double>() - stored) <= 1e-10 * stored);
  }
}

TEST_CASE("three equal masses have one planar survivor") {
  REQUIRE(run("solve --masses 1,1,1 --trials 4 --out " + path("three.json")) == 0);
  const auto docs = load(path("three.json"));
  REQUIRE(docs.size() == 1);
  CHECK(docs[0]["hull_class"] == "strictly_convex");
}

TEST_CASE("usage errors") {
  CHECK(run("solve --masses 1,-1,1,1,1 --out " + path("bad.json")) == 2);
  CHECK(run("solve --masses 1,x,1 --out " + path("bad.json")) == 2);
  CHECK(run("solve --masses 1,1,1") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
  CHECK(run("scan --trials 3 --mass-dist loguniform:10:0.1 --out " + path("bad.csv")) == 2);
  CHECK(run("scan --trials 3 --mass-dist uniform:1:2 --out " + path("bad.csv")) == 2);
  CHECK(run("graph --dot /nonexistent-dir/graph.dot") == 2);
}

TEST_CASE("verify edge cases") {
  std::ofstream(path("empty.json")) << "[]";
  CHECK(run("verify " + path("empty.json") + " --report " + path("empty_report.json")) == 0);
  CHECK(load(path("empty_report.json")).empty());

  std::ofstream(path("garbage.json")) << "{not json";
  CHECK(run("verify " + path("garbage.json") + " --report " + path("g.json")) == 2);

  REQUIRE(run("solve --masses 1,1,1,1,1 --trials 8 --seed 1 --out " + path("edit.json")) == 0);
  auto docs = load(path("edit.json"));
  REQUIRE(!docs.empty());
  docs[0]["positions"][0][0] = docs[0]["positions"][0][0].get<double>() + 0.02;
  std::ofstream(path("edited.json")) << docs.dump();
  CHECK(run("verify " + path("edited.json") + " --report " + path("edited_report.json")) == 1);
}

TEST_CASE("scan rows and determinism") {
  REQUIRE(run("scan --trials 200 --seed 5 --mass-dist loguniform:0.1:10 --out " + path("a.csv")) ==
          0);
  REQUIRE(run("scan --trials 200 --seed 5 --mass-dist loguniform:0.1:10 --out " + path("b.csv"),
              "CC_THREADS=1") == 0);
  const std::string a = slurp(path("a.csv"));
  CHECK(a == slurp(path("b.csv")));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "seed,trial,m1,m2,m3,m4,m5,hull_class,lambda,nu1,nu2,nu,min_chain_margin,"
        "max_identity_residual,pbt_ok,dst_ok");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 16);
    CHECK(std::stod(f[9]) > 0.0);
    CHECK(std::stod(f[10]) > 0.0);
    CHECK(f[14] == "true");
    CHECK(f[15] == "true");
    ++rows;
  }
  CHECK(rows >= 150);
}

TEST_CASE("graph export") {
  REQUIRE(run("graph --dot " + path("g1.dot")) == 0);
  REQUIRE(run("graph --dot " + path("g2.dot")) == 0);
  const std::string dot = slurp(path("g1.dot"));
  CHECK(dot == slurp(path("g2.dot")));
  const std::regex node(R"re(^  "(\d{5})";$)re");
  const std::regex edge(R"re(^  "(\d{5})" -- "(\d{5})";$)re");
  std::istringstream in(dot);
  int nodes = 0, edges = 0;
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_match(line, m, node)) {
      std::string s = m[1];
      CHECK(std::is_permutation(s.begin(), s.end(), std::string("12345").begin()));
      ++nodes;
    } else if (std::regex_match(line, edge)) {
      ++edges;
    }
  }
  CHECK(nodes == 30);
  CHECK(edges == 60);
}

TEST_CASE("solve output is reproducible") {
  REQUIRE(run("solve --masses 0.5,2,1,3,1.5 --trials 32 --seed 9 --out " + path("r1.json")) == 0);
  REQUIRE(run("solve --masses 0.5,2,1,3,1.5 --trials 32 --seed 9 --out " + path("r2.json"),
              "CC_THREADS=1") == 0);
  CHECK(slurp(path("r1.json")) == slurp(path("r2.json")));
}
