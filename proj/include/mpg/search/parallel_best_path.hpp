#pragma once

#include <optional>
#include <thread>
#include <vector>

#include "mpg/refine/refine.hpp"
#include "mpg/search/feasible_path_search.hpp"

namespace mpg {

template <PlanningState State>
struct ParallelSearchRun {
  std::uint64_t seed = 0;
  SearchStatus status = SearchStatus::kSearchExhausted;
  int iterations = 0;
  double rawCost = 0.0;
  std::optional<RefineResult<State>> refined;
};

template <PlanningState State>
struct ParallelSearchResult {
  SearchStatus status = SearchStatus::kSearchExhausted;
  std::optional<PlanPath<State>> path;
  int bestRun = -1;
  std::vector<ParallelSearchRun<State>> runs;

  bool ok() const { return status == SearchStatus::kSuccess; }
};

// K independent search + refine runs with seeds rngSeed + i, each on its own
// thread with no shared mutable state. The lowest refined cost wins; ties go
// to the lowest run index, so the result depends only on (inputs, rngSeed, K).
template <PlanningState State>
ParallelSearchResult<State> parallelBestPath(const GoalSpec& goal, const State& x0,
                                             const Registry<State>& registry,
                                             const SearchConfig& cfg, const RefineConfig& refine,
                                             const QuadraticEdgeCost& cost, int k) {
  if (k < 1) throw ConfigInvalid("parallel search count must be >= 1");
  ParallelSearchResult<State> out;
  out.runs.resize(static_cast<std::size_t>(k));

  auto work = [&](int i) {
    SearchConfig c = cfg;
    c.rngSeed = cfg.rngSeed + static_cast<std::uint64_t>(i);
    auto& run = out.runs[static_cast<std::size_t>(i)];
    run.seed = c.rngSeed;
    auto r = feasiblePathSearch(goal, x0, registry, c, cost);
    run.status = r.status;
    run.iterations = r.iterations;
    if (r.ok()) {
      run.rawCost = r.path->totalCost;
      run.refined = refinePath(*r.path, registry, cost, refine);
    }
  };

  if (k == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) threads.emplace_back(work, i);
    for (auto& t : threads) t.join();
  }

  bool anyInvalid = false;
  for (int i = 0; i < k; ++i) {
    const auto& run = out.runs[static_cast<std::size_t>(i)];
    if (run.status == SearchStatus::kInvalidGoal) anyInvalid = true;
    if (!run.refined) continue;
    if (out.bestRun < 0 ||
        run.refined->path.totalCost < out.runs[out.bestRun].refined->path.totalCost) {
      out.bestRun = i;
    }
  }
  if (out.bestRun >= 0) {
    out.status = SearchStatus::kSuccess;
    out.path = out.runs[out.bestRun].refined->path;
  } else {
    out.status = anyInvalid ? SearchStatus::kInvalidGoal : SearchStatus::kSearchExhausted;
  }
  return out;
}

}  // namespace mpg
