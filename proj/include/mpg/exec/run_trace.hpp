#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpg/bench/plant_state.hpp"
#include "mpg/search/feasible_path_search.hpp"
#include "mpg/search/plan_path.hpp"

namespace mpg::exec {

struct TickRecord {
  int tick = 0;
  double t = 0.0;
  bench::PlantState x;
  std::string active;  // empty while idle
  Vector xi;
  int planId = -1;     // plan being executed, -1 under a fallback or idle
  int edge = -1;
  bool replanning = false;
  bool violation = false;
  double error = 0.0;  // distance to the active setpoint
  std::string events;  // '|'-separated
};

struct PlanRecord {
  int id = 0;
  int requestTick = 0;
  int deliverTick = -1;
  std::uint64_t seed = 0;
  bench::PlantState snapshot;
  SearchStatus status = SearchStatus::kSearchExhausted;
  std::optional<PlanPath<bench::PlantState>> path;
  double rawCost = 0.0;
  double computeMs = 0.0;
  bool adopted = false;
  std::string outcome;  // adopted, rejected, failed, pending
};

struct Activation {
  int tick = 0;
  double t = 0.0;
  std::string primitive;
  Vector xi;
  std::string reason;  // plan or fallback
  int planId = -1;
  int edge = -1;
};

struct RunSummary {
  bool goalReached = false;
  std::optional<double> goalReachedTime;  // start of the final stretch at the goal
  int planRequests = 0;
  int replanCount = 0;  // requests after the first
  double maxDeviation = 0.0;
  int violationTicks = 0;
  std::vector<std::string> failures;
  std::string finalPrimitive;
  double finalError = 0.0;
  double wallSeconds = 0.0;
};

struct RunTrace {
  std::string scenario;
  std::string mode;  // deterministic or wall_clock
  int latencyTicks = 0;
  double dt = 0.0;
  std::vector<TickRecord> ticks;
  std::vector<PlanRecord> plans;
  std::vector<Activation> activations;
  RunSummary summary;

  const PlanRecord* plan(int id) const {
    for (const auto& p : plans) if (p.id == id) return &p;
    return nullptr;
  }
};

}  // namespace mpg::exec
