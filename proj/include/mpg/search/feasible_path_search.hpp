#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mpg/core/format.hpp"
#include "mpg/core/transfer.hpp"
#include "mpg/search/cost.hpp"
#include "mpg/search/plan_path.hpp"
#include "mpg/search/rng.hpp"

namespace mpg {

struct SearchConfig {
  double cheapestBias = 0.3;  // probability of expanding the cheapest node
  double tMin = 0.0;          // clock sampling range for t0
  double tMax = 0.5;
  double dtSlack = 1.0;       // width of the duration sampling window above dt_min
  int maxIterations = 20000;
  std::uint64_t rngSeed = 1;

  bool operator==(const SearchConfig&) const = default;

  void validate() const {
    if (!(cheapestBias >= 0.0 && cheapestBias <= 1.0)) throw ConfigInvalid("cheapest bias outside [0,1]");
    if (!(tMin <= tMax)) throw ConfigInvalid("t_min exceeds t_max");
    if (!(dtSlack >= 0.0)) throw ConfigInvalid("duration slack must be non-negative");
    if (maxIterations <= 0) throw ConfigInvalid("max iterations must be positive");
  }
};

struct GoalSpec {
  std::string primitiveId;
  Vector xi;
};

template <PlanningState State>
struct SearchNode {
  State state;
  std::optional<EdgeParams> action;
  int parent = -1;  // index into the node list, -1 at the root
  double costToCome = 0.0;
  double estCostToGo = 0.0;
};

enum class SearchStatus { kSuccess, kSearchExhausted, kInvalidGoal };

inline const char* toString(SearchStatus s) {
  switch (s) {
    case SearchStatus::kSuccess: return "Success";
    case SearchStatus::kSearchExhausted: return "SearchExhausted";
    case SearchStatus::kInvalidGoal: return "InvalidGoal";
  }
  return "?";
}

template <PlanningState State>
struct SearchResult {
  SearchStatus status = SearchStatus::kSearchExhausted;
  std::optional<PlanPath<State>> path;
  std::vector<SearchNode<State>> tree;  // the goal node, when found, is last
  int iterations = 0;

  bool ok() const { return status == SearchStatus::kSuccess; }
};

namespace detail {

template <PlanningState State>
State goalReference(const PrimitiveSpec<State>& goal, const Vector& xi, const State& x, double t0) {
  const double dt = requestMinDuration(goal, x, xi, t0);
  return goal.setpoint(x, xi, t0, t0 + dt);
}

}  // namespace detail

// Randomized tree expansion over the registered transfer functions until the
// goal primitive applies from some node in one step.
//
// Each iteration: pick the cheapest node with probability `cheapestBias`, else
// a uniformly random node; draw a primitive, its arguments, a clock value and a
// duration uniformly; keep the child only if the transfer changed the state.
// Durations are drawn from [dt_min, dt_min + dtSlack] of that request. Every
// new child is tested for one-step goal reachability with the goal's own
// minimum duration.
template <PlanningState State>
SearchResult<State> feasiblePathSearch(const GoalSpec& goal, const State& x0,
                                       const Registry<State>& registry, const SearchConfig& cfg,
                                       const QuadraticEdgeCost& cost) {
  if (registry.empty()) throw ConfigInvalid("empty primitive registry");
  if (!StateTraits<State>::coords(x0).allFinite()) throw std::invalid_argument("non-finite x0");
  cfg.validate();

  SearchResult<State> result;
  if (!registry.contains(goal.primitiveId)) {
    result.status = SearchStatus::kInvalidGoal;
    return result;
  }
  const auto& goalSpec = registry.at(goal.primitiveId);
  if (!goalSpec.args.contains(goal.xi)) {
    result.status = SearchStatus::kInvalidGoal;
    return result;
  }

  Rng rng(cfg.rngSeed);
  auto& nodes = result.tree;

  auto costToGo = [&](const State& x) {
    return cost(x, detail::goalReference(goalSpec, goal.xi, x, cfg.tMin));
  };

  // Goal one-step reachability from node `from`. Appends the goal node on success.
  auto tryGoal = [&](int from) {
    const double tg = rng.uniform(cfg.tMin, cfg.tMax);
    const State& x = nodes[from].state;
    const double dtMin = requestMinDuration(goalSpec, x, goal.xi, tg);
    auto r = applyTransfer(goalSpec, TransferRequest<State>{x, goal.primitiveId, goal.xi, tg, dtMin});
    if (!r.applied) return false;
    SearchNode<State> nd;
    nd.state = r.xOut;
    nd.action = EdgeParams{goal.primitiveId, goal.xi, tg, dtMin};
    nd.parent = from;
    nd.costToCome = cost(x, r.xOut) + nodes[from].costToCome;
    nd.estCostToGo = 0.0;
    nodes.push_back(std::move(nd));
    return true;
  };

  const double jg0 = costToGo(x0);
  nodes.push_back(SearchNode<State>{x0, std::nullopt, -1, 0.0, jg0});
  int cheapest = 0;
  double cheapestCost = jg0;

  bool found = tryGoal(0);
  int iter = 0;
  for (; !found && iter < cfg.maxIterations; ++iter) {
    const int sampled = rng.uniform() < cfg.cheapestBias
                            ? cheapest
                            : static_cast<int>(rng.index(nodes.size()));
    const auto& spec = registry[rng.index(registry.size())];
    Vector xi(spec.args.dimension());
    for (Eigen::Index k = 0; k < xi.size(); ++k) {
      xi[k] = rng.uniform(spec.args.lower()[k], spec.args.upper()[k]);
    }
    const double ts = rng.uniform(cfg.tMin, cfg.tMax);
    const State xs = nodes[sampled].state;
    const double dtMin = requestMinDuration(spec, xs, xi, ts);
    const double dts = rng.uniform(dtMin, dtMin + cfg.dtSlack);

    auto r = applyTransfer(spec, TransferRequest<State>{xs, spec.id, xi, ts, dts});
    if (r.xOut == xs) continue;

    const double jg = costToGo(r.xOut);
    const double jc = cost(xs, r.xOut) + nodes[sampled].costToCome;
    nodes.push_back(SearchNode<State>{r.xOut, EdgeParams{spec.id, xi, ts, dts}, sampled, jc, jg});
    const int added = static_cast<int>(nodes.size()) - 1;
    if (jg + jc < cheapestCost) {
      cheapestCost = jg + jc;
      cheapest = added;
    }
    found = tryGoal(added);
  }
  result.iterations = iter;

  if (!found) {
    result.status = SearchStatus::kSearchExhausted;
    return result;
  }

  std::deque<PlanEdge<State>> edges;
  for (int n = static_cast<int>(nodes.size()) - 1; nodes[n].parent >= 0; n = nodes[n].parent) {
    const auto& a = *nodes[n].action;
    edges.push_front(PlanEdge<State>{a.primitiveId, a.xi, a.t0, a.dt, nodes[n].state});
  }
  PlanPath<State> path;
  path.start = x0;
  path.edges.assign(edges.begin(), edges.end());
  path.totalCost = pathCost(path, cost);
  result.path = std::move(path);
  result.status = SearchStatus::kSuccess;
  return result;
}

/// Tab-separated tree dump, one node per line after a header:
///   id  parent  primitive  xi(;-joined)  t0  dt  cost_to_come  est_cost_to_go
/// The root has parent -1 and primitive "-".
template <PlanningState State>
void dumpTree(std::ostream& os, const std::vector<SearchNode<State>>& nodes) {
  os << "id\tparent\tprimitive\txi\tt0_s\tdt_s\tcost_to_come\test_cost_to_go\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    os << i << '\t' << n.parent << '\t';
    if (n.action) {
      os << n.action->primitiveId << '\t' << joinVector(n.action->xi) << '\t'
         << formatDouble(n.action->t0) << '\t' << formatDouble(n.action->dt);
    } else {
      os << "-\t\t\t";
    }
    os << '\t' << formatDouble(n.costToCome) << '\t' << formatDouble(n.estCostToGo) << '\n';
  }
}

}  // namespace mpg
