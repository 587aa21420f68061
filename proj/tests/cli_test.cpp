#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "mpg/cli/commands.hpp"

using namespace mpg;
using namespace mpg::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarioDir = MPG_SCENARIO_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mpg_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Json bundledJson(const std::string& name) {
  return Json::parse(std::ifstream(kScenarioDir / (name + ".json")));
}

fs::path writeJson(const fs::path& dir, const std::string& file, const Json& j) {
  const auto p = dir / file;
  std::ofstream(p) << j.dump(2);
  return p;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(MPG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int count(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ScenarioFile, BundledScenariosRoundTrip) {
  const auto names = bundledScenarios(kScenarioDir);
  ASSERT_EQ(names.size(), 7u);
  for (const auto& name : names) {
    const auto parsed = loadScenario(kScenarioDir / (name + ".json"));
    EXPECT_EQ(parsed.scenario.name, name);
    const Json full = scenarioToJson(parsed);
    const auto reparsed = parseScenarioText(full.dump());
    EXPECT_TRUE(reparsed == parsed) << name;
    EXPECT_EQ(scenarioToJson(reparsed), full) << name;
  }
}

TEST(ScenarioFile, InfiniteBoundsSerializeAsNull) {
  const auto f = loadScenario(kScenarioDir / "nominal_transition.json");
  const Json j = Json::parse(scenarioToJson(f).dump());
  EXPECT_TRUE(j["primitives"]["LandB"]["roa"]["tilt_max_rad"].is_null());
  EXPECT_TRUE(parseScenario(j).scenario.plant.land.roa.tiltMax == bench::kInf);
}

TEST(ScenarioFile, UnknownKeysAreRejectedWithTheirPath) {
  Json j = bundledJson("nominal_transition");
  j["bogus"] = 1;
  try {
    parseScenario(j);
    FAIL() << "accepted an unknown key";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "bogus");
  }
  j = bundledJson("nominal_transition");
  j["search"]["max_iteration"] = 10;
  try {
    parseScenario(j);
    FAIL() << "accepted an unknown nested key";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "search.max_iteration");
  }
  j = bundledJson("leg_hold_walk");
  j["disturbances"][0]["window_ms"] = 2000;
  EXPECT_THROW(parseScenario(j), SchemaError);
}

TEST(ScenarioFile, TypeAndDomainErrorsNameTheKey) {
  auto keyOf = [](const Json& j) {
    try {
      parseScenario(j);
    } catch (const SchemaError& e) {
      return e.key();
    }
    return std::string("(accepted)");
  };
  Json j = bundledJson("nominal_transition");
  j.erase("goal");
  EXPECT_EQ(keyOf(j), "goal");
  j = bundledJson("nominal_transition");
  j["duration_s"] = "eight";
  EXPECT_EQ(keyOf(j), "duration_s");
  j = bundledJson("nominal_transition");
  j["goal"]["primitive"] = "HopB";
  EXPECT_EQ(keyOf(j), "goal.primitive");
  j = bundledJson("nominal_transition");
  j["goal"]["args"] = {0.25, 0.9, 0.0, 0.0};
  EXPECT_EQ(keyOf(j), "goal.args");
  j = bundledJson("nominal_transition");
  j["initial_state"]["contacts"] = {true, true};
  EXPECT_EQ(keyOf(j), "initial_state.contacts");
  j = bundledJson("nominal_transition");
  j["search"]["cheapest_bias"] = 1.5;
  EXPECT_EQ(keyOf(j), "search");
  EXPECT_THROW(parseScenarioText("{ not json"), SchemaError);
}

TEST(RunCommand, OutputDirectoryPrecedence) {
  const auto f = loadScenario(kScenarioDir / "nominal_transition.json");
  RunOptions o;
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(outputDirFor(o, f), fs::path("mpg_out") / "nominal_transition");
  ScenarioFile withDir = f;
  withDir.outputDir = "from_file";
  EXPECT_EQ(outputDirFor(o, withDir), fs::path("from_file"));
  ::setenv(kOutDirEnv, "/tmp/env_out", 1);
  EXPECT_EQ(outputDirFor(o, withDir), fs::path("/tmp/env_out") / "nominal_transition");
  o.outDir = "flag";
  EXPECT_EQ(outputDirFor(o, withDir), fs::path("flag"));
  ::unsetenv(kOutDirEnv);
}

TEST(RunCommand, ExitCodesInProcess) {
  const auto dir = scratch("exit_in_process");
  std::ostringstream out, err;

  RunOptions ok;
  ok.scenario = "nominal_transition";
  ok.scenarioDir = kScenarioDir;
  ok.outDir = (dir / "ok").string();
  EXPECT_EQ(runCommand(ok, out, err), kExitOk);
  const auto summary = Json::parse(std::ifstream(dir / "ok" / "summary.json"));
  EXPECT_TRUE(summary["goal_reached"].get<bool>());
  EXPECT_EQ(slurp(dir / "ok" / "trace.csv").substr(0, std::string(exec::kTraceCsvHeader).size()),
            exec::kTraceCsvHeader);

  Json shortRun = bundledJson("nominal_transition");
  shortRun["duration_s"] = 0.5;
  RunOptions fail = ok;
  fail.scenario = writeJson(dir, "short.json", shortRun).string();
  fail.outDir = (dir / "short").string();
  EXPECT_EQ(runCommand(fail, out, err), kExitFailure);

  Json noGoal = bundledJson("nominal_transition");
  noGoal.erase("goal");
  RunOptions schema = ok;
  schema.scenario = writeJson(dir, "no_goal.json", noGoal).string();
  err.str("");
  EXPECT_EQ(runCommand(schema, out, err), kExitSchema);
  EXPECT_NE(err.str().find("schema error: goal:"), std::string::npos) << err.str();

  RunOptions missing = ok;
  missing.scenario = (dir / "does_not_exist.json").string();
  EXPECT_EQ(runCommand(missing, out, err), kExitSchema);
  fs::remove_all(dir);
}

TEST(RunCommand, ExitCodesFromBinary) {
  const auto dir = scratch("exit_binary");
  EXPECT_EQ(shell("run nominal_transition --out " + (dir / "nominal").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "nominal" / "plans.json"));

  Json shortRun = bundledJson("ledge_toss");
  shortRun["duration_s"] = 3.2;
  EXPECT_EQ(shell("run " + writeJson(dir, "short.json", shortRun).string() + " --out " + (dir / "s").string()), 1);

  Json noGoal = bundledJson("nominal_transition");
  noGoal.erase("goal");
  EXPECT_EQ(shell("run " + writeJson(dir, "no_goal.json", noGoal).string()), 2);
  EXPECT_EQ(shell("run"), 2);
  EXPECT_EQ(shell("plot " + (dir / "nowhere").string()), 1);
  fs::remove_all(dir);
}

TEST(RunCommand, LedgeTossPlanLogShowsLand) {
  const auto dir = scratch("ledge");
  EXPECT_EQ(shell("run ledge_toss --seed 3 --deterministic-latency 20 --out " + dir.string()), 0);
  const auto summary = Json::parse(std::ifstream(dir / "summary.json"));
  bool land = false;
  for (const auto& a : summary["activations"]) {
    if (a["primitive"] == "LandB" && a["t_s"].get<double>() >= 3.0 && a["t_s"].get<double>() <= 3.0011) land = true;
  }
  EXPECT_TRUE(land);
  EXPECT_EQ(summary["final_primitive"], "WalkB");
  fs::remove_all(dir);
}

TEST(RunCommand, SeedFlagOverridesPlannerSeed) {
  const auto dir = scratch("seed");
  std::ostringstream out, err;
  RunOptions o;
  o.scenario = "kick_stand_medium";
  o.scenarioDir = kScenarioDir;
  o.seed = 42;
  o.outDir = dir.string();
  ASSERT_EQ(runCommand(o, out, err), kExitOk);
  const auto plans = Json::parse(std::ifstream(dir / "plans.json"));
  EXPECT_EQ(plans["plans"][0]["seed"].get<std::uint64_t>(), 42u);
  fs::remove_all(dir);
}

TEST(Plot, NominalHasThreeBands) {
  const auto dir = scratch("plot_nominal");
  ASSERT_EQ(shell("run nominal_transition --out " + dir.string()), 0);
  std::ostringstream out, err;
  ASSERT_EQ(plotCommand(dir, std::nullopt, out, err), kExitOk);
  const auto svg = slurp(dir / "timeline.svg");
  EXPECT_EQ(count(svg, "class=\"band\""), 3);
  EXPECT_EQ(count(svg, "class=\"replan\""), 0);
  EXPECT_NE(svg.find("data-primitive=\"WalkB\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Plot, KickShowsReplansAndSpikeThenDecay) {
  const auto dir = scratch("plot_kick");
  ASSERT_EQ(shell("run kick_stand_medium --out " + dir.string()), 0);
  std::ostringstream out, err;
  ASSERT_EQ(plotCommand(dir, dir / "kick.svg", out, err), kExitOk);
  const auto svg = slurp(dir / "kick.svg");
  const auto summary = Json::parse(std::ifstream(dir / "summary.json"));
  EXPECT_EQ(count(svg, "class=\"replan\""), summary["replan_count"].get<int>());
  EXPECT_NE(svg.find("data-name=\"vy_mps\""), std::string::npos);

  const auto rows = exec::readTraceCsv(dir / "trace.csv");
  double peak = 0.0;
  for (const auto& r : rows) {
    if (r.t >= 2.0 && r.t < 2.1) peak = std::max(peak, std::abs(r.coords[bench::kVy]));
  }
  EXPECT_GT(peak, 0.4);
  EXPECT_LT(std::abs(rows.back().coords[bench::kVy]), 0.01);
  fs::remove_all(dir);
}

TEST(Plot, MissingOrCorruptTraceFails) {
  const auto dir = scratch("plot_bad");
  std::ostringstream out, err;
  EXPECT_EQ(plotCommand(dir, std::nullopt, out, err), kExitFailure);
  std::ofstream(dir / "trace.csv") << exec::kTraceCsvHeader << '\n';
  EXPECT_EQ(plotCommand(dir, std::nullopt, out, err), kExitFailure);
  std::ofstream(dir / "trace.csv") << "garbage\n";
  EXPECT_EQ(plotCommand(dir, std::nullopt, out, err), kExitFailure);
  EXPECT_EQ(shell("plot " + dir.string()), 1);
  fs::remove_all(dir);
}

TEST(BenchSearch, NearestRank) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(nearestRank(v, 50), 5);
  EXPECT_EQ(nearestRank(v, 95), 10);
  EXPECT_EQ(nearestRank({7.0}, 95), 7.0);
}

TEST(BenchSearch, SingleRepeatCollapsesStatistics) {
  const auto s = loadScenario(kScenarioDir / "nominal_transition.json").scenario;
  const auto r = benchSearch(s, {1, 5, 1, false});
  EXPECT_EQ(r.latenciesMs.size(), 1u);
  EXPECT_EQ(r.minMs, r.medianMs);
  EXPECT_EQ(r.medianMs, r.p95Ms);
  EXPECT_EQ(r.successes, 1);
  EXPECT_THROW(benchSearch(s, {0, 1, 1, false}), ConfigInvalid);
}

TEST(BenchSearch, FixedSeedGivesIdenticalCosts) {
  const auto s = loadScenario(kScenarioDir / "nominal_transition.json").scenario;
  const auto fixed = benchSearch(s, {5, 11, 1, true});
  for (double c : fixed.costs) EXPECT_EQ(c, fixed.costs.front());
  const auto varied = benchSearch(s, {5, 11, 1, false});
  EXPECT_EQ(varied.costs.front(), fixed.costs.front());
  EXPECT_EQ(varied.successes, 5);
}

TEST(BenchSearch, JsonReport) {
  std::ostringstream out, err;
  ASSERT_EQ(benchSearchCommand("nominal_transition", kScenarioDir, {3, 1, 2, false}, out, err), kExitOk);
  const auto j = Json::parse(out.str());
  for (const char* key : {"repeats", "k", "min_ms", "median_ms", "p95_ms", "total_s", "costs"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["repeats"], 3);
  EXPECT_LE(j["min_ms"].get<double>(), j["median_ms"].get<double>());
  EXPECT_LE(j["median_ms"].get<double>(), j["p95_ms"].get<double>());
}
