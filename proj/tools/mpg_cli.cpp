#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mpg/cli/commands.hpp"

#ifndef MPG_SCENARIO_DIR
#define MPG_SCENARIO_DIR "scenarios"
#endif

int main(int argc, char** argv) {
  using namespace mpg::cli;

  CLI::App app{"Motion primitive graph planner: scenario runs, plots and planner benchmarks"};
  app.require_subcommand(1);
  std::string scenarioDir = MPG_SCENARIO_DIR;
  app.add_option("--scenario-dir", scenarioDir, "Directory holding the bundled scenarios")
      ->capture_default_str();

  RunOptions run;
  std::uint64_t seed = 0;
  std::string out;
  int latency = 0;
  auto* runCmd = app.add_subcommand("run", "Run a scenario and write trace.csv, plans.json, summary.json");
  runCmd->add_option("scenario", run.scenario, "Scenario file or bundled scenario name")->required();
  auto* seedOpt = runCmd->add_option("--seed", seed, "Planner seed (overrides search.seed)");
  auto* outOpt = runCmd->add_option("--out", out, "Output directory");
  auto* latOpt = runCmd->add_option("--deterministic-latency", latency,
                                    "Deliver plans exactly this many ticks after the request")
                     ->check(CLI::NonNegativeNumber);
  runCmd->add_flag("--wall-clock", run.wallClock, "Plan on a worker thread, paced to real time")
      ->excludes(latOpt);

  std::string traceDir;
  std::string svgOut;
  auto* plotCmd = app.add_subcommand("plot", "Render a run directory's trace.csv as an SVG timeline");
  plotCmd->add_option("trace_dir", traceDir, "Directory containing trace.csv")->required();
  auto* svgOpt = plotCmd->add_option("-o,--output", svgOut, "SVG file (default <trace_dir>/timeline.svg)");

  BenchOptions bench;
  std::string benchScenario = "nominal_transition";
  auto* benchCmd = app.add_subcommand("bench-search", "Time the planner on a scenario's start and goal");
  benchCmd->add_option("--repeats", bench.repeats, "Number of planner calls")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  benchCmd->add_option("--seed", bench.seed, "First seed")->capture_default_str();
  benchCmd->add_option("--k", bench.k, "Parallel searches per call")->check(CLI::PositiveNumber)->capture_default_str();
  benchCmd->add_flag("--fixed-seed", bench.fixedSeed, "Reuse the first seed for every repeat");
  benchCmd->add_option("--scenario", benchScenario, "Scenario file or bundled name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  run.scenarioDir = scenarioDir;
  if (*runCmd) {
    if (*seedOpt) run.seed = seed;
    if (*outOpt) run.outDir = out;
    if (*latOpt) run.deterministicLatency = latency;
    return runCommand(run, std::cout, std::cerr);
  }
  if (*plotCmd) {
    std::optional<std::filesystem::path> svg;
    if (*svgOpt) svg = svgOut;
    return plotCommand(traceDir, svg, std::cout, std::cerr);
  }
  return benchSearchCommand(benchScenario, scenarioDir, bench, std::cout, std::cerr);
}
