#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "sullivan/cli.hpp"
#include "sullivan/format.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sullivan;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = SULLIVAN_SOURCE_DIR;

// Runs with the working directory set to tests/data.
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  fs::path saved = fs::current_path();
  fs::current_path(source_dir / "tests" / "data");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  fs::current_path(saved);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Case {
  std::string name;
  int code;
  std::vector<std::string> args;
};

std::vector<Case> golden_cases() {
  std::vector<Case> out;
  std::istringstream lines(slurp(source_dir / "tests" / "golden" / "cases.txt"));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    Case c;
    words >> c.name >> c.code;
    for (std::string w; words >> w;) c.args.push_back(w);
    out.push_back(c);
  }
  return out;
}

json golden(const std::string& name) { return json::parse(slurp(source_dir / "tests" / "golden" / (name + ".json"))); }

}  // namespace

TEST_CASE("golden reports") {
  auto cases = golden_cases();
  CHECK(cases.size() >= 16);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto args = c.args;
    args.push_back("--json");
    Run r = run(args);
    CHECK(r.code == c.code);
    json got = json::parse(r.out);
    CHECK(got == golden(c.name));
    for (const char* key : {"command", "cutoff", "verdict", "data"}) CHECK(got.contains(key));
    CHECK(got.size() == 4);
    // the table form exits the same way
    CHECK(run(c.args).code == c.code);
  }
}

TEST_CASE("golden values agree with the oracle") {
  json hopf = golden("cohomology_hopf");
  auto b = oracle::betti(fixtures::hopf(), 10);
  REQUIRE(hopf["data"]["cohomology"].size() == b.size());
  for (std::size_t n = 0; n < b.size(); ++n) CHECK(hopf["data"]["cohomology"][n]["dimension"] == b[n]);

  DGAlgebra s5 = fixtures::cp2();
  s5.add_generator("x", 1, s5.gen("a"));
  json cp = golden("cohomology_cp2_s5");
  auto bs = oracle::betti(s5, 12);
  for (std::size_t n = 0; n < bs.size(); ++n) CHECK(cp["data"]["cohomology"][n]["dimension"] == bs[n]);

  json bq = golden("minimal_bouquet");
  json counts = bq["data"]["counts"];
  REQUIRE(counts.size() == 4);
  // weight-l Lie words on two letters sit in model degree 2l + 1
  for (int l = 1; l <= 4; ++l) {
    CHECK(counts[l - 1]["degree"] == 2 * l + 1);
    CHECK(counts[l - 1]["count"] == oracle::witt(2, l));
  }

  json inj = golden("injectivity_kill_x");
  CHECK(inj["verdict"] == "not_injective");
  CHECK(inj["data"]["witnesses"][0]["base_class"] == "x");
  CHECK(inj["data"]["fiber"]["kind"] == "NonzeroNearCutoff");
}

TEST_CASE("cli examples") {
  Run c = run({"cohomology", "hopf.dga", "--max-degree", "10"});
  CHECK(c.code == 0);
  CHECK(c.out.find("  3       1          a*x - b") != std::string::npos);

  fs::path tower = fs::temp_directory_path() / "sullivan_cli_tower.dga";
  Run k = run({"kill-even", "cp2.dga", "--max-degree", "9", "--max-stages", "6", "-o", tower.string()});
  CHECK(k.code == 0);
  ParsedFile p = read_dga_file(tower.string());
  REQUIRE(p.is_fibration());
  CHECK(validate_fibration(*p.fibration, 10).ok());
  auto b = oracle::betti(p.algebra, 9);
  for (int n = 2; n <= 9; n += 2) CHECK(b[n] == 0);
  fs::remove(tower);

  Run i = run({"injectivity", "kill_x.dga", "--max-degree", "12"});
  CHECK(i.code == 1);
  CHECK(i.out.find("NonzeroNearCutoff") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"cohomology"}).code == 2);
  CHECK(run({"cohomology", "s2.dga", "--max-degree", "x"}).code == 2);
  CHECK(run({"attach", "s2.dga"}).code == 2);               // no class
  CHECK(run({"attach", "s2.dga", "--class", "b"}).code == 2);  // not a cocycle
  CHECK(run({"attach", "s2.dga", "--class", "a + a^2"}).code == 2);
  CHECK(run({"minimal-model"}).code == 2);
  CHECK(run({"minimal-model", "--bouquet", "x:2"}).code == 2);
  CHECK(run({"minimal-model", "--bouquet", "x3"}).code == 2);
  CHECK(run({"sphere-engine", "hopf.dga"}).code == 2);
  CHECK(run({"search", "s3.dga", "--class", "x"}).code == 2);  // no degrees
  CHECK(run({"kill-even", "s2.dga", "-o", "/nonexistent/dir/out.dga"}).code == 2);

  Run e = run({"cohomology", "bad_degree.dga"});
  CHECK(e.code == 2);
  CHECK(e.err.find("bad_degree.dga:3:7: degree mismatch") != std::string::npos);
  CHECK(e.out.empty());
}
