#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string output;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(HECKE_CELLS) + " " + args + " 2>&1";
  Run r{-1, ""};
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) r.output += buf;
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  return r;
}

struct Scratch {
  Scratch() : dir(fs::temp_directory_path() / ("hecke-cells-test-" + std::to_string(::getpid()))) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
  }
  json read(const std::string& name) const {
    std::ifstream in(dir / name);
    return json::parse(in);
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  fs::path dir;
};

const std::string kB2p2 = R"({"system":"B2","p":2,"basis":{"121":{"121":"1","1":"1"}}})";

}  // namespace

TEST_CASE("kl writes the full expansion") {
  Scratch s;
  auto r = cli("kl --system A2 --out " + s.path("a2"));
  CHECK(r.code == 0);
  CHECK(s.read("a2/kl.json")["kl"]["basis"].size() == 6);

  r = cli("kl --system B2 --out " + s.path("b2"));
  CHECK(r.code == 0);
  const auto basis = s.read("b2/kl.json")["kl"]["basis"];
  CHECK(basis.size() == 8);
  bool longest = false;
  for (const auto& e : basis) {
    if (e["w"] == "1212") longest = e["expansion"].size() == 8 && e["expansion"]["e"] == "v^4";
  }
  CHECK(longest);

  // A custom Cartan matrix (G2) and an infinite one.
  s.write("g2.json", R"({"labels":["a","b"],"matrix":[[2,-1],[-3,2]]})");
  r = cli("kl --cartan " + s.path("g2.json") + " --out " + s.path("g2"));
  CHECK(r.code == 0);
  CHECK(s.read("g2/kl.json")["kl"]["basis"].size() == 12);
  s.write("inf.json", R"({"labels":["a","b"],"matrix":[[2,-2],[-2,2]]})");
  CHECK(cli("kl --cartan " + s.path("inf.json") + " --out " + s.path("x")).code == 2);
  CHECK(cli("kl --system Z9 --out " + s.path("x")).code == 2);
}

TEST_CASE("cells") {
  Scratch s;
  auto r = cli("cells --system A3 --p kl --format json,dot,csv --out " + s.path("a3"));
  CHECK(r.code == 0);
  auto doc = s.read("a3/cells.json");
  CHECK(doc["left"]["cells"].size() == 10);
  CHECK(doc["two_sided"]["cells"].size() == 5);
  CHECK(doc["rs_cross_check"]["passed"] == true);
  for (const char* f : {"cells-left.dot", "cells-right.dot", "cells-two-sided.dot", "cells.csv"}) {
    CHECK(fs::exists(s.dir / "a3" / f));
  }

  CHECK(cli("cells --system A4 --out " + s.path("a4")).code == 0);
  CHECK(s.read("a4/cells.json")["left"]["cells"].size() == 26);

  s.write("b2p2.json", kB2p2);
  CHECK(cli("cells --system B2 --table " + s.path("b2p2.json") + " --out " + s.path("b2")).code == 0);
  doc = s.read("b2/cells.json");
  CHECK(doc["left"]["cells"].size() == 5);
  CHECK(doc["two_sided"]["cells"].size() == 4);
  CHECK_FALSE(doc.contains("rs_cross_check"));
  bool middle = false;
  for (const auto& c : doc["two_sided"]["cells"]) {
    if (c["members"] == json{"2", "12", "21", "121", "212"}) middle = true;
  }
  CHECK(middle);
}

TEST_CASE("table errors exit with 3") {
  Scratch s;
  s.write("neg.json", R"({"system":"B2","p":2,"basis":{"121":{"121":"1","1":"-1"}}})");
  auto r = cli("cells --system B2 --table " + s.path("neg.json") + " --out " + s.path("o"));
  CHECK(r.code == 3);
  CHECK(fs::exists(s.dir / "o" / "validation.json"));
  s.write("tri.json", R"({"system":"B2","p":2,"basis":{"1":{"1":"1","121":"1"}}})");
  CHECK(cli("cells --system B2 --table " + s.path("tri.json") + " --out " + s.path("o")).code == 3);
  s.write("b2p2.json", kB2p2);
  CHECK(cli("cells --system A2 --table " + s.path("b2p2.json") + " --out " + s.path("o")).code == 3);
  CHECK(cli("cells --system B2 --p 3 --table " + s.path("b2p2.json") + " --out " + s.path("o")).code == 3);
  CHECK(cli("cells --system A3 --p 5 --out " + s.path("o")).code == 5);
}

TEST_CASE("verify") {
  Scratch s;
  auto r = cli("verify all --system A4 --p kl --out " + s.path("a4"));
  CHECK(r.code == 0);
  CHECK(s.read("a4/verify-all.json")["passed"] == true);

  CHECK(cli("verify axioms --system B2 --out " + s.path("b2")).code == 5);
  // `all` skips the type-A verifiers instead.
  CHECK(cli("verify all --system B2 --p 2 --out " + s.path("b2")).code == 0);
  CHECK(s.read("b2/verify-all.json")["reports"]["axioms"].contains("skipped"));

  s.write("b2p2.json", kB2p2);
  r = cli("verify perron --system B2 --table " + s.path("b2p2.json") + " --out " + s.path("p"));
  CHECK(r.code == 0);
  CHECK(r.output.find("lambda = 11.6568542495") != std::string::npos);
  const auto rep = s.read("p/verify-perron.json");
  const double rt2 = std::sqrt(2.0);
  int checked = 0;
  for (const auto& J : rep["reports"]["perron"]["two_sided_cells"]) {
    if (J["coefficients"].size() != 5) continue;
    CHECK(std::abs(J["lambda"].get<double>() - (6 + 4 * rt2)) < 1e-9);
    for (const auto& c : J["coefficients"]) {
      const std::string x = c["element"];
      const double want = (x == "12" || x == "21") ? (rt2 - 1) / 4 : (2 - rt2) / 8;
      CHECK(std::abs(c["d"].get<double>() - want) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked == 5);
  // The header records every tolerance.
  CHECK(rep["header"]["tolerances"].contains("crosscheck"));
  CHECK(rep["header"]["tolerances"]["pass"] == 1e-9);
}

TEST_CASE("reports are deterministic across --jobs") {
  Scratch s;
  const std::string args = "verify all --system A3 --weights random --seed 9 --format json,csv";
  REQUIRE(cli(args + " --jobs 1 --out " + s.path("j1")).code == 0);
  REQUIRE(cli(args + " --jobs 4 --out " + s.path("j4")).code == 0);
  CHECK(s.slurp("j1/verify-all.json") == s.slurp("j4/verify-all.json"));
  CHECK(s.slurp("j1/perron.csv") == s.slurp("j4/perron.csv"));
  CHECK(s.read("j1/verify-all.json")["header"]["seed"] == 9);
}

TEST_CASE("flags override the config file") {
  Scratch s;
  s.write("cfg.json", "{\"system\": \"B3\", \"tol\": 1e-8, \"out\": \"" + s.path("from-config") + "\"}");
  CHECK(cli("cells --config " + s.path("cfg.json") + " --system A1").code == 0);
  const auto doc = s.read("from-config/cells.json");
  CHECK(doc["header"]["system"] == "A1");
  CHECK(doc["header"]["tolerances"]["pass"] == 1e-8);

  s.write("bad.json", R"({"sytem": "A2"})");
  CHECK(cli("cells --config " + s.path("bad.json")).code == 2);
  CHECK(cli("verify nonsense").code == 2);
}
