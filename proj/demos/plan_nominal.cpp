// Plans from a resting pose to a walk, refines the path and prints it.

#include <cstdio>

#include "mpg/bench/primitives.hpp"
#include "mpg/search/parallel_best_path.hpp"

int main() {
  using namespace mpg;
  using namespace mpg::bench;

  const PlantConfig plant;
  const auto registry = buildBenchRegistry(plant);

  PlantState x0;
  x0.h = 0.05;
  x0.theta = {0.1, -0.06, 0.0};
  x0.contacts = kAllContacts;

  Vector walk(4);
  walk << 0.25, 0.2, 0.0, 0.0;  // height, vx, vy, yaw rate

  SearchConfig search;
  search.rngSeed = 1;
  const QuadraticEdgeCost cost(Vector::Ones(kNumCoords), 0.05);
  const auto result = parallelBestPath<PlantState>({kWalk, walk}, x0, registry, search, RefineConfig{}, cost, 4);
  if (!result.ok()) {
    std::printf("no path: %s\n", toString(result.status));
    return 1;
  }
  const auto& run = result.runs[static_cast<std::size_t>(result.bestRun)];
  std::printf("best of %zu runs (seed %llu): raw cost %.4f, refined %.4f\n", result.runs.size(),
              static_cast<unsigned long long>(run.seed), run.rawCost, result.path->totalCost);
  for (const auto& e : result.path->edges) {
    std::printf("  %-6s dt=%.3f s  xi=[", e.primitiveId.c_str(), e.dt);
    for (Eigen::Index i = 0; i < e.xi.size(); ++i) std::printf(i ? ", %.3f" : "%.3f", e.xi[i]);
    std::printf("]  -> h=%.3f vx=%.3f\n", e.state.h, e.state.v[0]);
  }
  return 0;
}
