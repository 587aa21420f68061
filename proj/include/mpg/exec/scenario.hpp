#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mpg/bench/plant.hpp"
#include "mpg/bench/primitives.hpp"
#include "mpg/refine/refine.hpp"
#include "mpg/search/feasible_path_search.hpp"
#include "mpg/search/rng.hpp"

namespace mpg::exec {

using bench::Disturbance;
using bench::PlantState;

struct CostConfig {
  std::array<double, bench::kNumCoords> weights{1, 1, 1, 1, 1, 1, 1, 1, 1};
  double switchCost = 0.05;

  bool operator==(const CostConfig&) const = default;

  QuadraticEdgeCost make() const {
    return QuadraticEdgeCost(Eigen::Map<const Vector>(weights.data(), bench::kNumCoords), switchCost);
  }
};

struct ExecConfig {
  double adoptionTolerance = 0.1;  // weighted state distance
  double handoffGrace = 0.5;       // s to wait for the next edge's RoA after an edge's duration
  std::vector<std::string> fallbackGrounded{bench::kLie, bench::kLand};
  std::vector<std::string> fallbackAirborne{bench::kLand, bench::kLie};
  // Set: plans are computed on request and delivered this many ticks later.
  // Unset: plans run on a worker thread and the loop is paced to wall time.
  std::optional<int> deterministicLatencyTicks = 20;

  bool operator==(const ExecConfig&) const = default;
};

/// Random impulses standing in for uneven ground. Expanded with its own seed,
/// independent of the planner seed.
struct ImpulseTrain {
  std::uint64_t seed = 1;
  double start = 0.0;  // s
  double end = 0.0;    // s
  double minInterval = 0.3;
  double maxInterval = 0.8;
  double maxDv = 0.1;      // m/s, per planar axis
  double maxDTilt = 0.03;  // rad, roll and pitch
  double maxDVz = 0.1;     // m/s

  bool operator==(const ImpulseTrain&) const = default;

  void validate() const {
    if (!(start >= 0.0) || !(end >= start)) throw ConfigInvalid("impulse_train: need 0 <= start <= end");
    if (!(minInterval > 0.0) || !(maxInterval >= minInterval)) {
      throw ConfigInvalid("impulse_train: need 0 < min interval <= max interval");
    }
    if (!(maxDv >= 0.0) || !(maxDTilt >= 0.0) || !(maxDVz >= 0.0)) {
      throw ConfigInvalid("impulse_train: magnitudes must be non-negative");
    }
  }

  std::vector<Disturbance> expand() const {
    std::vector<Disturbance> out;
    Rng rng(seed);
    for (double t = start + rng.uniform(minInterval, maxInterval); t < end;
         t += rng.uniform(minInterval, maxInterval)) {
      Disturbance d;
      d.kind = bench::DisturbanceKind::kImpulse;
      d.time = t;
      d.dV = {rng.uniform(-maxDv, maxDv), rng.uniform(-maxDv, maxDv)};
      d.dTheta = {rng.uniform(-maxDTilt, maxDTilt), rng.uniform(-maxDTilt, maxDTilt), 0.0};
      d.dVz = rng.uniform(-maxDVz, maxDVz);
      out.push_back(d);
    }
    return out;
  }
};

struct Scenario {
  std::string name;
  bench::PlantConfig plant;
  PlantState initial;
  std::string goalPrimitive;
  std::vector<double> goalArgs;
  std::vector<Disturbance> disturbances;
  std::optional<ImpulseTrain> impulseTrain;
  double duration = 10.0;  // s
  double dt = 1e-3;        // s
  SearchConfig search;
  RefineConfig refine;
  int parallelSearches = 1;
  CostConfig cost;
  ExecConfig exec;

  bool operator==(const Scenario&) const = default;

  GoalSpec goal() const {
    return {goalPrimitive, Eigen::Map<const Vector>(goalArgs.data(), static_cast<Eigen::Index>(goalArgs.size()))};
  }

  /// Scripted disturbances plus the expanded impulse train, ordered by time.
  std::vector<Disturbance> allDisturbances() const {
    std::vector<Disturbance> out = disturbances;
    if (impulseTrain) {
      auto extra = impulseTrain->expand();
      out.insert(out.end(), extra.begin(), extra.end());
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Disturbance& a, const Disturbance& b) { return a.time < b.time; });
    return out;
  }

  void validate() const {
    if (!(duration > 0.0)) throw ConfigInvalid("scenario duration must be positive");
    if (!(dt > 0.0) || dt > duration) throw ConfigInvalid("scenario dt must be in (0, duration]");
    if (parallelSearches < 1) throw ConfigInvalid("parallel searches must be >= 1");
    if (!initial.finite()) throw ConfigInvalid("initial state must be finite");
    plant.validate();
    search.validate();
    refine.validate();
    for (const auto& d : disturbances) d.validate();
    if (impulseTrain) impulseTrain->validate();
    if (!(exec.adoptionTolerance >= 0.0) || !(exec.handoffGrace >= 0.0)) {
      throw ConfigInvalid("adoption tolerance and handoff grace must be non-negative");
    }
    if (exec.deterministicLatencyTicks && *exec.deterministicLatencyTicks < 0) {
      throw ConfigInvalid("deterministic latency must be >= 0 ticks");
    }
    for (double w : cost.weights) if (!(w >= 0.0)) throw ConfigInvalid("cost weights must be non-negative");
    if (!(cost.switchCost >= 0.0)) throw ConfigInvalid("switch cost must be non-negative");
  }
};

}  // namespace mpg::exec
