#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agc/cli.hpp"
#include "agc/dsl.hpp"
#include "helpers.hpp"

using namespace agc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "agc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("agc_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check accepts the bundled contracts") {
    auto r = cli({"check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("3 contract(s) ok") != std::string::npos);
    CHECK(cli({"check", "--goal"}).code == 0);
  }

  TEST_CASE("check reports parse and type errors") {
    auto dir = scratch("check");
    spit(dir / "bad.agc", "component X { in i (a : nat); out o (b : nat); assume a < ; guarantee true; }");
    auto r = cli({"check", "--contracts", (dir / "bad.agc").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad.agc:1:") != std::string::npos);
    spit(dir / "ill.agc", "component X { in i (a : nat); out o (b : nat); assume a in a; guarantee true; }");
    CHECK(cli({"check", "--contracts", (dir / "ill.agc").string()}).code == 1);
  }

  TEST_CASE("usage and io errors exit with two") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"check", "--contracts", "/nonexistent.agc"}).code == 2);
    CHECK(cli({"compose", "--bounds", "n=0"}).code == 2);
    CHECK(cli({"run"}).code == 2);
  }

  TEST_CASE("compose is deterministic") {
    auto a = scratch("compose_a");
    auto b = scratch("compose_b");
    auto r1 = cli({"compose", "--out", a.string()});
    auto r2 = cli({"compose", "--out", b.string()});
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(slurp(a / "obligations.txt") == slurp(b / "obligations.txt"));
    CHECK(r1.out.find("derived Detection -> Agent") != std::string::npos);
    CHECK(r1.out.find("status: Discharged") != std::string::npos);
  }

  TEST_CASE("a mutated assumption is refuted") {
    auto dir = scratch("mutate");
    auto text = read_text_file(test::data("rover_goal.agc"));
    auto at = text.find("component Planner");
    REQUIRE(at != std::string::npos);
    auto assume = text.find("  assume", at);
    text.insert(assume + std::string("  assume ").size(), "goal in Grid and ");
    spit(dir / "m.agc", text);
    auto r = cli({"compose", "--goal", "--contracts", (dir / "m.agc").string(), "--out", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("status: Refuted") != std::string::npos);
    CHECK(r.out.find("derived none") != std::string::npos);
  }

  TEST_CASE("a tiny budget cannot discharge by enumeration") {
    auto dir = scratch("budget");
    auto r = cli({"compose", "--exhaustive", "--bounds", "envs=10", "--out", dir.string()});
    CHECK(r.code != 0);
    CHECK(r.out.find("Exhausted") != std::string::npos);
  }

  TEST_CASE("run finds a plan") {
    auto dir = scratch("run");
    auto r = cli({"run", "--goal", "--world", test::data("worlds/w2_center_block.world"), "--out",
                  dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("(5 cells)") != std::string::npos);
    CHECK(slurp(dir / "plan.txt").find("cardinality = 5") != std::string::npos);
    std::istringstream log(slurp(dir / "events.log"));
    std::string line;
    int lines = 0;
    while (std::getline(log, line)) ++lines;
    CHECK(lines == 6);
  }

  TEST_CASE("run reports an unreachable goal") {
    auto dir = scratch("unreachable");
    auto r = cli({"run", "--goal", "--world", test::data("worlds/w3_unreachable.world"), "--out",
                  dir.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("Agent: EmptyPlanSet") != std::string::npos);
    CHECK(r.err.find("violation:") != std::string::npos);
  }

  TEST_CASE("faulted worlds fail") {
    auto dir = scratch("fault");
    for (const char* fault : {"Detection PhantomObstacle 5,5", "Detection CorruptStart 1,1",
                              "Planner DropPlanConnectivity", "Agent PickNonMinimal"}) {
      spit(dir / "f.world", std::string("n = 3\nobstacles = 1,1\nstart = 0,0\ngoal = 2,2\nfault = ") +
                                fault + "\n");
      auto r = cli({"run", "--world", (dir / "f.world").string(), "--out", dir.string()});
      CAPTURE(fault);
      CHECK(r.code == 1);
      CHECK(r.err.find("halted:") != std::string::npos);
    }
  }

  TEST_CASE("report renders the bundled ledger") {
    auto dir = scratch("report");
    auto r = cli({"report", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("System score: 1/3") != std::string::npos);
    CHECK(slurp(dir / "confidence.txt").find("System score") != std::string::npos);
    auto positional = cli({"report", test::data("rover.ledger"), "--out", dir.string()});
    CHECK(positional.out == r.out);
  }

  TEST_CASE("a config file overrides flags") {
    auto dir = scratch("config");
    spit(dir / "agc.toml", "bounds = \"envs=10\"\nexhaustive = true\nseed = 0\n");
    auto r = cli({"compose", "--bounds", "envs=1000000", "--config", (dir / "agc.toml").string(),
                  "--out", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("Exhausted") != std::string::npos);
    spit(dir / "bad.toml", "colour = \"red\"\n");
    CHECK(cli({"check", "--config", (dir / "bad.toml").string()}).code == 2);
  }

  TEST_CASE("bounds parse") {
    auto b = parse_bounds("plans=2,n=4");
    CHECK(b.max_n == 4);
    CHECK(b.max_plans == 2);
    CHECK(b.max_card == 4);
    CHECK(format_bounds(b) == "n=4,card=4,plans=2,envs=1000000");
    CHECK_THROWS(parse_bounds("n=-1"));
    CHECK_THROWS(parse_bounds("x=1"));
  }
}
