#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mpg/cli/plot.hpp"
#include "mpg/cli/scenario_file.hpp"
#include "mpg/exec/executive.hpp"
#include "mpg/exec/trace_io.hpp"

namespace mpg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;

inline constexpr const char* kOutDirEnv = "MPG_OUT_DIR";

/// A path to an existing file, or the name of a bundled scenario in `scenarioDir`.
inline std::filesystem::path resolveScenario(const std::string& arg, const std::filesystem::path& scenarioDir) {
  std::filesystem::path p(arg);
  if (std::filesystem::is_regular_file(p)) return p;
  if (!p.has_parent_path() && !scenarioDir.empty()) {
    auto bundled = scenarioDir / p;
    if (!bundled.has_extension()) bundled += ".json";
    if (std::filesystem::is_regular_file(bundled)) return bundled;
  }
  return p;
}

/// Bundled scenario names, sorted.
inline std::vector<std::string> bundledScenarios(const std::filesystem::path& scenarioDir) {
  std::vector<std::string> names;
  if (!std::filesystem::is_directory(scenarioDir)) return names;
  for (const auto& e : std::filesystem::directory_iterator(scenarioDir)) {
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

struct RunOptions {
  std::string scenario;
  std::filesystem::path scenarioDir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> outDir;
  std::optional<int> deterministicLatency;
  bool wallClock = false;
};

// --out, then $MPG_OUT_DIR/<name>, then the file's output.dir, then mpg_out/<name>.
inline std::filesystem::path outputDirFor(const RunOptions& o, const ScenarioFile& f) {
  if (o.outDir) return *o.outDir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) {
    return std::filesystem::path(env) / f.scenario.name;
  }
  if (f.outputDir) return *f.outputDir;
  return std::filesystem::path("mpg_out") / f.scenario.name;
}

inline int runCommand(const RunOptions& o, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  try {
    file = loadScenario(resolveScenario(o.scenario, o.scenarioDir));
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }
  auto& s = file.scenario;
  if (o.seed) s.search.rngSeed = *o.seed;
  if (o.wallClock) s.exec.deterministicLatencyTicks.reset();
  if (o.deterministicLatency) s.exec.deterministicLatencyTicks = *o.deterministicLatency;

  try {
    const auto trace = exec::runScenario(s);
    const auto dir = outputDirFor(o, file);
    exec::writeRunOutputs(dir, trace);
    const auto& sum = trace.summary;
    out << s.name << ": goal " << (sum.goalReached ? "reached" : "not reached");
    if (sum.goalReachedTime) out << " at t=" << formatDouble(*sum.goalReachedTime, 6) << " s";
    out << ", replans " << sum.replanCount << ", violation ticks " << sum.violationTicks
        << ", final " << (sum.finalPrimitive.empty() ? "idle" : sum.finalPrimitive) << "\n";
    for (const auto& f : sum.failures) out << "  failure: " << f << '\n';
    out << "outputs in " << dir.string() << '\n';
    return sum.goalReached ? kExitOk : kExitFailure;
  } catch (const ConfigInvalid& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

inline int plotCommand(const std::filesystem::path& traceDir, const std::optional<std::filesystem::path>& outFile,
                       std::ostream& out, std::ostream& err) {
  try {
    const auto svg = plotTrace(traceDir, outFile.value_or(std::filesystem::path{}));
    out << "wrote " << svg.string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "plot failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

struct BenchOptions {
  int repeats = 100;
  std::uint64_t seed = 1;
  int k = 1;
  bool fixedSeed = false;
};

struct BenchReport {
  int repeats = 0;
  int k = 1;
  std::uint64_t seed = 0;
  bool fixedSeed = false;
  int successes = 0;
  double minMs = 0.0;
  double medianMs = 0.0;
  double p95Ms = 0.0;
  double meanMs = 0.0;
  double totalSeconds = 0.0;
  std::vector<double> latenciesMs;
  std::vector<double> costs;  // refined cost per repeat, NaN when no path
};

/// Nearest-rank percentile of an ascending-sorted sample.
inline double nearestRank(const std::vector<double>& sorted, double pct) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

/// Times parallelBestPath from the scenario's initial state to its goal.
inline BenchReport benchSearch(const exec::Scenario& s, const BenchOptions& o) {
  if (o.repeats < 1) throw ConfigInvalid("repeats must be >= 1");
  if (o.k < 1) throw ConfigInvalid("k must be >= 1");
  s.validate();
  const auto registry = bench::buildBenchRegistry(s.plant);
  const auto goal = s.goal();
  const auto cost = s.cost.make();

  BenchReport r;
  r.repeats = o.repeats;
  r.k = o.k;
  r.seed = o.seed;
  r.fixedSeed = o.fixedSeed;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < o.repeats; ++i) {
    SearchConfig cfg = s.search;
    cfg.rngSeed = o.fixedSeed ? o.seed : o.seed + static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(o.k);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = parallelBestPath(goal, s.initial, registry, cfg, s.refine, cost, o.k);
    r.latenciesMs.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    if (res.ok()) {
      ++r.successes;
      r.costs.push_back(res.path->totalCost);
    } else {
      r.costs.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  r.totalSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto sorted = r.latenciesMs;
  std::sort(sorted.begin(), sorted.end());
  r.minMs = sorted.front();
  r.medianMs = nearestRank(sorted, 50.0);
  r.p95Ms = nearestRank(sorted, 95.0);
  double sum = 0.0;
  for (double v : sorted) sum += v;
  r.meanMs = sum / static_cast<double>(sorted.size());
  return r;
}

inline Json benchReportToJson(const BenchReport& r) {
  Json j;
  j["repeats"] = r.repeats;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["fixed_seed"] = r.fixedSeed;
  j["successes"] = r.successes;
  j["min_ms"] = r.minMs;
  j["median_ms"] = r.medianMs;
  j["p95_ms"] = r.p95Ms;
  j["mean_ms"] = r.meanMs;
  j["total_s"] = r.totalSeconds;
  j["latencies_ms"] = r.latenciesMs;
  Json costs = Json::array();
  for (double c : r.costs) costs.push_back(std::isfinite(c) ? Json(c) : Json(nullptr));
  j["costs"] = std::move(costs);
  return j;
}

inline int benchSearchCommand(const std::string& scenario, const std::filesystem::path& scenarioDir,
                              const BenchOptions& o, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  try {
    file = loadScenario(resolveScenario(scenario, scenarioDir));
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSchema;
  }
  try {
    out << benchReportToJson(benchSearch(file.scenario, o)).dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "bench-search failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace mpg::cli
