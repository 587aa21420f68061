#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpg/core/format.hpp"
#include "mpg/core/transfer.hpp"
#include "mpg/search/cost.hpp"
#include "mpg/search/plan_path.hpp"

namespace mpg {

struct RefineConfig {
  double stepSize = 0.05;  // in units of argument-domain width (and timeScale for durations)
  int maxGDIterations = 30;
  int maxOuterIterations = 8;
  double costTolerance = 1e-6;
  double finiteDiffStep = 1e-6;
  double timeScale = 1.0;  // s, step scaling for t0 and dt
  int maxHalvings = 10;

  bool operator==(const RefineConfig&) const = default;

  void validate() const {
    if (!(stepSize > 0.0) || maxGDIterations <= 0 || maxOuterIterations <= 0 ||
        !(costTolerance > 0.0) || !(finiteDiffStep > 0.0) || !(timeScale > 0.0)) {
      throw ConfigInvalid("refine parameters must be positive");
    }
  }
};

enum class GradientMode { kAuto, kFiniteDifference };

/// d x_i / d(xi_i, t0_i, dt_i) over continuous coordinates, kDim x (a + 2).
template <PlanningState State>
Matrix edgeSensitivity(const PrimitiveSpec<State>& spec, const State& parent, const EdgeParams& e,
                       GradientMode mode, double fdStep) {
  using Traits = StateTraits<State>;
  const Eigen::Index a = e.xi.size();
  Matrix out(static_cast<Eigen::Index>(Traits::kDim), a + 2);
  if (mode == GradientMode::kAuto && spec.hasJacobian()) {
    const Matrix j = spec.setpointJacobian(parent, e.xi, e.t0, e.t0 + e.dt);
    out.leftCols(a) = j.leftCols(a);
    out.col(a) = j.col(a) + j.col(a + 1);
    out.col(a + 1) = j.col(a + 1);
    return out;
  }
  auto eval = [&](const Vector& xi, double t0, double dt) {
    return Traits::coords(spec.setpoint(parent, xi, t0, t0 + dt));
  };
  for (Eigen::Index k = 0; k < a; ++k) {
    Vector hi = e.xi, lo = e.xi;
    hi[k] += fdStep;
    lo[k] -= fdStep;
    out.col(k) = (eval(hi, e.t0, e.dt) - eval(lo, e.t0, e.dt)) / (2.0 * fdStep);
  }
  out.col(a) = (eval(e.xi, e.t0 + fdStep, e.dt) - eval(e.xi, e.t0 - fdStep, e.dt)) / (2.0 * fdStep);
  out.col(a + 1) =
      (eval(e.xi, e.t0, e.dt + fdStep) - eval(e.xi, e.t0, e.dt - fdStep)) / (2.0 * fdStep);
  return out;
}

/// Gradient of J_i = J(x_{i-1}, x_i) + J(x_i, x_{i+1}) with respect to edge i's
/// (xi, t0, dt), holding the neighbouring states fixed. Edge indices are
/// zero-based; the second term is dropped for the last edge.
template <PlanningState State>
Vector localCostGradient(const PlanPath<State>& path, std::size_t i, const Registry<State>& registry,
                         const QuadraticEdgeCost& cost, double fdStep = 1e-6,
                         GradientMode mode = GradientMode::kAuto) {
  using Traits = StateTraits<State>;
  if (i >= path.edges.size()) throw std::out_of_range("edge index out of range");
  const auto& e = path.edges[i];
  const auto& spec = registry.at(e.primitiveId);
  const Vector prev = Traits::coords(path.stateBefore(i));
  const Vector cur = Traits::coords(e.state);
  Vector dJdx = cost.gradientTo(prev, cur);
  if (i + 1 < path.edges.size()) {
    dJdx += cost.gradientFrom(cur, Traits::coords(path.edges[i + 1].state));
  }
  const Matrix s = edgeSensitivity(spec, path.stateBefore(i), e.params(), mode, fdStep);
  return s.transpose() * dJdx;
}

// Projected gradient descent on one edge's (xi, t0, dt). Steps are taken in
// coordinates scaled by the argument-domain width (timeScale for times) with
// length stepSize, then projected: xi clamped to its domain, dt clamped to the
// current dt_min. A step is accepted only if the whole chain stays feasible
// (which includes x_i staying in the successor's safe region of attraction,
// with downstream durations lifted to their new minimums) and the total cost
// drops; otherwise the step is halved, at most maxHalvings times. The goal
// edge keeps its arguments.
template <PlanningState State>
PlanPath<State> descendEdge(PlanPath<State> path, std::size_t i, const Registry<State>& registry,
                            const QuadraticEdgeCost& cost, const RefineConfig& cfg) {
  if (i >= path.edges.size()) throw std::out_of_range("edge index out of range");
  const auto& spec = registry.at(path.edges[i].primitiveId);
  const bool isGoal = i + 1 == path.edges.size();
  const Eigen::Index a = spec.args.dimension();

  Vector scale(a + 2);
  if (a > 0) scale.head(a) = isGoal ? Vector::Zero(a) : spec.args.width();
  scale[a] = spec.clockInvariant ? 0.0 : cfg.timeScale;
  scale[a + 1] = cfg.timeScale;

  for (int it = 0; it < cfg.maxGDIterations; ++it) {
    const Vector g = localCostGradient(path, i, registry, cost, cfg.finiteDiffStep);
    const Vector sg = scale.cwiseProduct(g);
    const double n = sg.norm();
    if (!(n > 0.0) || !std::isfinite(n)) break;
    const Vector dir = -scale.cwiseProduct(sg) / n;

    const auto& cur = path.edges[i];
    bool accepted = false;
    double step = cfg.stepSize;
    for (int h = 0; h <= cfg.maxHalvings && !accepted; ++h, step *= 0.5) {
      PlanPath<State> cand = path;
      auto& ce = cand.edges[i];
      if (a > 0) ce.xi = spec.args.clamp(cur.xi + step * dir.head(a));
      ce.t0 = cur.t0 + step * dir[a];
      const double dtMin = requestMinDuration(spec, cand.stateBefore(i), ce.xi, ce.t0);
      ce.dt = std::max(cur.dt + step * dir[a + 1], dtMin);
      if (!recompose(cand, registry, cost, true)) continue;
      if (cand.totalCost < path.totalCost) {
        const double gain = path.totalCost - cand.totalCost;
        path = std::move(cand);
        accepted = true;
        if (gain < cfg.costTolerance) return path;
      }
    }
    if (!accepted) break;
  }
  return path;
}

/// Front-to-back bypass scan. Edge i (never the goal edge) is dropped when the
/// chain that feeds x_{i-1} straight into edge i+1 stays feasible and does not
/// cost more. Downstream durations are lifted to their new minimums.
template <PlanningState State>
std::pair<PlanPath<State>, int> pruneOnce(PlanPath<State> path, const Registry<State>& registry,
                                          const QuadraticEdgeCost& cost) {
  int removed = 0;
  std::size_t i = 0;
  while (i + 1 < path.edges.size()) {
    PlanPath<State> cand = path;
    cand.edges.erase(cand.edges.begin() + static_cast<std::ptrdiff_t>(i));
    if (recompose(cand, registry, cost, true) && cand.totalCost <= path.totalCost) {
      path = std::move(cand);
      ++removed;
    } else {
      ++i;
    }
  }
  return {std::move(path), removed};
}

struct CostTraceRow {
  int outerIter = 0;
  std::string pass;  // "input", "descent" or "prune"
  double totalCost = 0.0;
  std::size_t pathLength = 0;
};

template <PlanningState State>
struct RefineResult {
  PlanPath<State> path;
  std::vector<CostTraceRow> trace;
  int outerIterations = 0;
};

/// Alternates full descent passes and prune passes until neither improves.
template <PlanningState State>
RefineResult<State> refinePath(const PlanPath<State>& input, const Registry<State>& registry,
                               const QuadraticEdgeCost& cost, const RefineConfig& cfg) {
  cfg.validate();
  RefineResult<State> out{input, {}, 0};
  out.trace.push_back({0, "input", out.path.totalCost, out.path.size()});
  for (int outer = 1; outer <= cfg.maxOuterIterations; ++outer) {
    const double before = out.path.totalCost;
    for (std::size_t i = 0; i < out.path.edges.size(); ++i) {
      out.path = descendEdge(std::move(out.path), i, registry, cost, cfg);
    }
    out.trace.push_back({outer, "descent", out.path.totalCost, out.path.size()});
    auto [pruned, removed] = pruneOnce(std::move(out.path), registry, cost);
    out.path = std::move(pruned);
    out.trace.push_back({outer, "prune", out.path.totalCost, out.path.size()});
    out.outerIterations = outer;
    if (before - out.path.totalCost < cfg.costTolerance && removed == 0) break;
  }
  return out;
}

/// CSV with header `outer_iter,pass,total_cost,path_length`.
inline void writeCostTrace(std::ostream& os, const std::vector<CostTraceRow>& rows) {
  os << "outer_iter,pass,total_cost,path_length\n";
  for (const auto& r : rows) {
    os << r.outerIter << ',' << r.pass << ',' << formatDouble(r.totalCost) << ',' << r.pathLength
       << '\n';
  }
}

}  // namespace mpg
