#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = RESMATCH_CLI;
const std::string kFixtures = RESMATCH_FIXTURES;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("resmatch_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const Scratch& scratch() {
  static Scratch s;
  return s;
}

int run(const std::string& args) {
  std::string cmd = kCli + " " + args + " >>" + (scratch() / "log.txt") + " 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json load(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("compute on the P5 fixture") {
  std::string out = scratch() / "p5.json";
  CHECK(run("compute -i " + fixture("p5.graph") + " --trials 4 -o " + out) == 0);
  auto j = load(out);
  CHECK(j["nu"] == 2);
  CHECK(j["ell"] == 1);
  CHECK(j["L"] == 2);
  CHECK(j["achieved"] == nlohmann::json::array({1, 2}));
  CHECK(j["bipartite"] == true);
  CHECK(j["bounds"]["violations"].empty());
  CHECK(j["approx"]["trials"].size() == 4);
}

TEST_CASE("compute on the twin spider fixture") {
  std::string out = scratch() / "spider.json";
  CHECK(run("compute -i " + fixture("twin_spider.graph") + " -o " + out) == 0);
  auto j = load(out);
  CHECK(j["nu"] == 5);
  CHECK(j["nu2"] == 8);
  CHECK(j["ell"] == 2);
  CHECK(j["L"] == 2);
  CHECK(j["matchings_enumerated"] == 1);
  CHECK(j["L_upper_bound"] == 3);
}

TEST_CASE("compute reports disconnected graphs and is deterministic") {
  std::string a = scratch() / "two_a.json";
  std::string b = scratch() / "two_b.json";
  CHECK(run("compute -i " + fixture("two_edges.graph") + " --trials 3 --seed 9 -o " + a) == 0);
  CHECK(run("compute -i " + fixture("two_edges.graph") + " --trials 3 --seed 9 -o " + b) == 0);
  CHECK(load(a)["connected"] == false);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("compute answers the residual question and flags truncation") {
  std::string out = scratch() / "p1.json";
  CHECK(run("compute -i " + fixture("p5.graph") + " --f const:0 --k 0 -o " + out) == 0);
  CHECK(load(out)["problem1"]["answer"] == "no");
  CHECK(run("compute -i " + fixture("p5.graph") + " --f identity --k 2 -o " + out) == 0);
  CHECK(load(out)["problem1"]["enumerated"] == false);
  CHECK(run("compute -i " + fixture("p5.graph") + " --cap 1 -o " + out) == 1);
  CHECK(load(out)["truncated"] == true);
  CHECK(run("compute -i " + fixture("p5.graph") + " --f cubic --k 0 -o " + out) == 2);
  CHECK(run("compute -i " + fixture("missing.graph")) == 2);
}

TEST_CASE("reduce builds both variants with certificates") {
  std::string g = scratch() / "one_L.graph";
  CHECK(run("reduce -i " + fixture("one_clause.cnf") + " --variant L --exhaustive -o " + g) == 0);
  auto cert = load(g + ".cert.json");
  CHECK(cert["V"] == 32);
  CHECK(cert["kParam"] == 10);
  CHECK(cert["ok"] == true);
  CHECK(slurp(g).rfind("p mg 32 36\n", 0) == 0);

  std::string e = scratch() / "one_ell.graph";
  CHECK(run("reduce -i " + fixture("one_clause.cnf") + " --variant ell -o " + e + " --certificate " +
            (scratch() / "ell.cert.json")) == 0);
  CHECK(load(scratch() / "ell.cert.json")["V"] == 28);

  CHECK(run("reduce -i " + fixture("repeated_variable.cnf") + " -o " + (scratch() / "bad.graph")) == 2);
  CHECK_FALSE(fs::exists(scratch() / "bad.graph"));
}

TEST_CASE("verify passes honest artifacts and catches a deleted edge") {
  std::string g = scratch() / "v1.graph";
  REQUIRE(run("reduce -i " + fixture("one_clause.cnf") + " -o " + g) == 0);
  std::string report = scratch() / "v1.report.json";
  CHECK(run("verify -i " + g + " --cnf " + fixture("one_clause.cnf") + " --exhaustive -o " + report) == 0);
  CHECK(load(report)["residualChecks"].size() == 8);

  // Drop the last edge line and fix up the header count by hand.
  std::istringstream lines(slurp(g));
  std::vector<std::string> kept;
  for (std::string line; std::getline(lines, line);) kept.push_back(line);
  kept.pop_back();
  kept[0] = "p mg 32 35";
  std::string tampered = scratch() / "tampered.graph";
  {
    std::ofstream out(tampered);
    for (const auto& line : kept) out << line << '\n';
  }
  std::string bad = scratch() / "tampered.json";
  CHECK(run("verify -i " + tampered + " --certificate " + g + ".cert.json --cnf " + fixture("one_clause.cnf") +
            " --exhaustive -o " + bad) == 1);
  auto j = load(bad);
  CHECK(j["ok"] == false);
  bool count_reported = false;
  for (const auto& d : j["discrepancies"]) count_reported |= d.get<std::string>().find("edge count") != std::string::npos;
  CHECK(count_reported);

  std::string g2 = scratch() / "v2.graph";
  REQUIRE(run("reduce -i " + fixture("two_clauses.cnf") + " --variant ell -o " + g2) == 0);
  CHECK(run("verify -i " + g2 + " --cnf " + fixture("two_clauses.cnf") + " --exhaustive -o " + (scratch() / "v2.json")) ==
        0);
  CHECK(run("verify -i " + g2 + " --cnf " + fixture("one_clause.cnf") + " -o " + (scratch() / "v3.json")) == 1);
}

TEST_CASE("bench families") {
  std::string p5 = scratch() / "p5.csv";
  CHECK(run("bench --family path --vertices 5 --trials 1 --seeds 10 -o " + p5) == 0);
  std::istringstream rows(slurp(p5));
  std::string header;
  std::getline(rows, header);
  CHECK(header == "graph,n,m,nu,ell,L,seed,residual,r_ell,r_L,bounds_ok,truncated");
  int count = 0;
  for (std::string row; std::getline(rows, row);) {
    ++count;
    CHECK(row.rfind("0,5,4,2,1,2,", 0) == 0);
  }
  CHECK(count == 10);

  std::string cycles = scratch() / "cycles.csv";
  CHECK(run("bench --family even-cycles --trials 6 --seeds 4 -o " + cycles) == 0);
  std::istringstream cycle_rows(slurp(cycles));
  std::getline(cycle_rows, header);
  for (std::string row; std::getline(cycle_rows, row);) {
    std::vector<std::string> cells;
    std::istringstream split(row);
    for (std::string cell; std::getline(split, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    CHECK(cells[8] == "1");
    CHECK(cells[9] == "1");
  }

  std::string a = scratch() / "rb_a.csv";
  std::string b = scratch() / "rb_b.csv";
  CHECK(run("bench --family random-bipartite --vertices 10 --trials 100 --seed 4 -o " + a) == 0);
  CHECK(run("bench --family random-bipartite --vertices 10 --trials 100 --seed 4 -o " + b) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("calibrate") {
  std::string out = scratch() / "cal.json";
  CHECK(run("calibrate --variant L --epsilon 1/176 -o " + out) == 0);
  CHECK(load(out)["delta"] == "1/16");
  CHECK(run("calibrate --variant ell --epsilon 1/160 -o " + out) == 0);
  CHECK(load(out)["delta"] == "1/16");
  CHECK(run("calibrate --epsilon 1/100 --c 1/300 -o " + out) == 0);
  CHECK(load(out)["c_below_bound"] == true);
  CHECK(run("calibrate --epsilon 1/100 --c 1/256 -o " + out) == 0);
  CHECK(load(out)["c_below_bound"] == false);
  CHECK(run("calibrate --variant L --epsilon 1/88") == 2);
  CHECK(run("calibrate --variant ell --epsilon 1/80") == 2);
  CHECK(run("calibrate --variant L --epsilon 1/0") == 2);
}

TEST_CASE("no temporary files are left behind") {
  for (const auto& entry : fs::directory_iterator(scratch().dir))
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
}
