#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mpg/core/transfer.hpp"
#include "mpg/search/cost.hpp"

namespace mpg {

template <PlanningState State>
struct PlanEdge {
  std::string primitiveId;
  Vector xi;
  double t0 = 0.0;
  double dt = 0.0;
  State state;  // realized setpoint at the end of this edge

  EdgeParams params() const { return {primitiveId, xi, t0, dt}; }
};

/// A chain of transfers from `start`; the last edge is the goal primitive.
template <PlanningState State>
struct PlanPath {
  State start;
  std::vector<PlanEdge<State>> edges;
  double totalCost = 0.0;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }

  const State& stateBefore(std::size_t i) const { return i == 0 ? start : edges[i - 1].state; }

  std::vector<EdgeParams> params() const {
    std::vector<EdgeParams> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.params());
    return out;
  }

  std::vector<std::string> sequence() const {
    std::vector<std::string> out;
    for (const auto& e : edges) out.push_back(e.primitiveId);
    return out;
  }
};

template <PlanningState State>
double pathCost(const PlanPath<State>& path, const QuadraticEdgeCost& cost) {
  double total = 0.0;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    total += cost(path.stateBefore(i), path.edges[i].state);
  }
  return total;
}

/// Rebuilds realized states and cost from the edge parameters. With
/// `liftDurations`, every duration shorter than its (re-evaluated) minimum is
/// raised to that minimum first. Returns false, leaving `path` untouched, if
/// the chain is infeasible.
template <PlanningState State>
bool recompose(PlanPath<State>& path, const Registry<State>& registry,
               const QuadraticEdgeCost& cost, bool liftDurations = false) {
  std::vector<PlanEdge<State>> edges = path.edges;
  State x = path.start;
  for (auto& e : edges) {
    const auto& spec = registry.at(e.primitiveId);
    if (liftDurations) e.dt = std::max(e.dt, requestMinDuration(spec, x, e.xi, e.t0));
    auto r = applyTransfer(spec, TransferRequest<State>{x, e.primitiveId, e.xi, e.t0, e.dt});
    if (!r.applied) return false;
    e.state = r.xOut;
    x = r.xOut;
  }
  path.edges = std::move(edges);
  path.totalCost = pathCost(path, cost);
  return true;
}

/// Exact re-validation: every edge applies and the realized states match.
template <PlanningState State>
bool revalidate(const PlanPath<State>& path, const Registry<State>& registry) {
  auto chain = composeChain(registry, path.start, path.params());
  if (!chain.feasible || chain.states.size() != path.edges.size()) return false;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    if (!(chain.states[i] == path.edges[i].state)) return false;
  }
  return true;
}

}  // namespace mpg
