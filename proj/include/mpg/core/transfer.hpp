#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mpg/core/primitive.hpp"

namespace mpg {

/// Shortest duration after which the tracking error is guaranteed to be below
/// epsilon: max(0, ln(M * errNorm / epsilon) / alpha), nudged up by a few ulps
/// where needed so that M * exp(-alpha * dt) * errNorm <= epsilon holds in
/// floating point too.
inline double minDuration(const StabilityEnvelope& envelope, double errNorm) {
  if (!(errNorm > 0.0)) return 0.0;
  const double ratio = envelope.overshoot * errNorm / envelope.epsilon;
  if (ratio <= 1.0) return 0.0;
  double dt = std::log(ratio) / envelope.rate;
  for (int i = 0; i < 64 && envelope.overshoot * std::exp(-envelope.rate * dt) * errNorm > envelope.epsilon; ++i) {
    dt = std::nextafter(dt, std::numeric_limits<double>::infinity());
  }
  return dt;
}

template <PlanningState State>
struct TransferRequest {
  State x0;
  std::string primitiveId;
  Vector xi;
  double t0 = 0.0;
  double dt = 0.0;
};

template <PlanningState State>
struct TransferResult {
  bool applied = false;
  State xOut;
  double dtMin = 0.0;
};

/// Edge parameters without the input state.
struct EdgeParams {
  std::string primitiveId;
  Vector xi;
  double t0 = 0.0;
  double dt = 0.0;
};

template <PlanningState State>
double requestMinDuration(const PrimitiveSpec<State>& spec, const State& x0, const Vector& xi,
                          double t0) {
  return minDuration(spec.envelope, spec.anchorError(x0, xi, t0));
}

/// The transfer function: the setpoint after `dt` if the primitive is safely
/// applicable from `x0` for at least its minimum duration, else `x0` untouched.
template <PlanningState State>
TransferResult<State> applyTransfer(const PrimitiveSpec<State>& spec,
                                    const TransferRequest<State>& req) {
  if (!spec.args.contains(req.xi)) {
    throw ArgumentOutOfDomain("argument outside the domain of " + spec.id);
  }
  TransferResult<State> out{false, req.x0, 0.0};
  out.dtMin = requestMinDuration(spec, req.x0, req.xi, req.t0);
  if (!(req.dt >= 0.0)) return out;
  if (spec.safeRoA(req.x0, req.xi, req.t0) && req.dt >= out.dtMin) {
    out.applied = true;
    out.xOut = spec.setpoint(req.x0, req.xi, req.t0, req.t0 + req.dt);
  }
  return out;
}

template <PlanningState State>
TransferResult<State> applyTransfer(const Registry<State>& registry, const State& x0,
                                    const EdgeParams& edge) {
  return applyTransfer(registry.at(edge.primitiveId),
                       TransferRequest<State>{x0, edge.primitiveId, edge.xi, edge.t0, edge.dt});
}

template <PlanningState State>
struct ChainResult {
  bool feasible = true;
  std::vector<State> states;
};

/// Threads a state through a sequence of transfers, stopping at the first one
/// that does not apply.
template <PlanningState State>
ChainResult<State> composeChain(const Registry<State>& registry, const State& x0,
                                const std::vector<EdgeParams>& edges) {
  for (const auto& e : edges) {
    if (!registry.contains(e.primitiveId)) throw UnknownPrimitive(e.primitiveId);
  }
  ChainResult<State> out;
  out.states.reserve(edges.size());
  State x = x0;
  for (const auto& e : edges) {
    auto r = applyTransfer(registry, x, e);
    if (!r.applied) {
      out.feasible = false;
      return out;
    }
    x = r.xOut;
    out.states.push_back(x);
  }
  return out;
}

}  // namespace mpg
