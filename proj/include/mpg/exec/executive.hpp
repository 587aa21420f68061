#pragma once

#include <chrono>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mpg/bench/plant.hpp"
#include "mpg/bench/primitives.hpp"
#include "mpg/exec/run_trace.hpp"
#include "mpg/exec/scenario.hpp"
#include "mpg/search/parallel_best_path.hpp"

namespace mpg::exec {

/// A finished plan may replace what is running only if the state it was
/// planned from is still close to the live state and its first edge is
/// applicable from the live state.
template <PlanningState State>
bool adoptionCheck(const PlanPath<State>& plan, const State& live, double tol,
                   const Registry<State>& registry) {
  if (plan.empty()) return false;
  const auto& first = plan.edges.front();
  const auto& spec = registry.at(first.primitiveId);
  return spec.norm.distance(plan.start, live) <= tol && spec.safeRoA(live, first.xi, first.t0);
}

namespace detail {

struct PlanOutcome {
  ParallelSearchResult<PlantState> result;
  double computeMs = 0.0;
};

inline PlanOutcome computePlan(const GoalSpec& goal, const PlantState& snapshot,
                               const bench::BenchRegistry& registry, SearchConfig search,
                               const RefineConfig& refine, const QuadraticEdgeCost& cost, int k,
                               std::uint64_t seed) {
  search.rngSeed = seed;
  const auto start = std::chrono::steady_clock::now();
  PlanOutcome out{parallelBestPath(goal, snapshot, registry, search, refine, cost, k), 0.0};
  out.computeMs =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline void addEvent(std::string& events, const std::string& e) {
  if (!events.empty()) events += '|';
  events += e;
}

inline bool anyFootOff(const PlantState& x) { return x.contactCount() < bench::kNumFeet; }

}  // namespace detail

// Fixed-step control loop with asynchronous replanning.
//
// The run starts idle and requests a plan at t = 0. Each tick the plant is
// stepped, then:
//   1. the active primitive is checked: its safe set (a violation) and the
//      tracking check against its RoA error box (an invalidation);
//   2. on either, the plan is dropped, a fallback primitive whose safe RoA
//      holds is activated (keeping the current one if it is already that
//      fallback) and a replan is requested;
//   3. otherwise, once the current edge has run for its duration, the next
//      edge starts as soon as its safe RoA holds; if it does not within
//      handoffGrace the plan is invalidated as in 2;
//   4. a delivered plan is adopted if adoptionCheck passes, else re-requested.
// The planner works on a snapshot and hands back an immutable result. With a
// deterministic latency the plan is computed at request time and delivered
// exactly that many ticks later; otherwise it runs on a worker thread that
// the loop polls without blocking, and the loop is paced to wall time.
inline RunTrace runScenario(const Scenario& s, const bench::BenchRegistry& registry) {
  s.validate();
  const GoalSpec goal = s.goal();
  if (!registry.contains(goal.primitiveId)) throw ConfigInvalid("goal primitive: unknown " + goal.primitiveId);
  if (!registry.at(goal.primitiveId).args.contains(goal.xi)) {
    throw ConfigInvalid("goal args outside the domain of " + goal.primitiveId);
  }
  for (const auto* order : {&s.exec.fallbackGrounded, &s.exec.fallbackAirborne}) {
    for (const auto& id : *order) {
      if (!registry.contains(id)) throw ConfigInvalid("fallback: unknown primitive " + id);
      if (registry.at(id).args.dimension() != 0) throw ConfigInvalid("fallback primitives take no arguments: " + id);
    }
  }

  const auto disturbances = s.allDisturbances();
  const QuadraticEdgeCost cost = s.cost.make();
  const bool deterministic = s.exec.deterministicLatencyTicks.has_value();
  const int latency = deterministic ? *s.exec.deterministicLatencyTicks : 0;
  const int numTicks = static_cast<int>(std::llround(s.duration / s.dt));
  const double epsilon = registry.at(goal.primitiveId).envelope.epsilon;

  RunTrace trace;
  trace.scenario = s.name;
  trace.mode = deterministic ? "deterministic" : "wall_clock";
  trace.latencyTicks = latency;
  trace.dt = s.dt;
  trace.ticks.reserve(static_cast<std::size_t>(numTicks) + 1);
  auto& summary = trace.summary;

  PlantState x = s.initial;
  std::optional<bench::ActivePrimitive> active;
  std::optional<PlanPath<PlantState>> plan;
  int planId = -1;
  int edge = -1;
  double edgeDuration = 0.0;

  struct Pending {
    int record = 0;  // index into trace.plans
    int deliverTick = 0;
    std::optional<detail::PlanOutcome> ready;
    std::future<detail::PlanOutcome> future;
  };
  std::optional<Pending> pending;

  const auto wallStart = std::chrono::steady_clock::now();
  int tick = 0;
  double t = 0.0;
  std::string events;

  auto activate = [&](const std::string& id, const Vector& xi, double clock, const std::string& reason,
                      int pid, int e) {
    const auto& spec = registry.at(id);
    active = bench::ActivePrimitive{&spec, xi, x, clock, t};
    trace.activations.push_back({tick, t, id, xi, reason, pid, e});
    detail::addEvent(events, "activate:" + id);
  };

  auto startEdge = [&](int e) {
    const auto& pe = plan->edges[static_cast<std::size_t>(e)];
    edge = e;
    activate(pe.primitiveId, pe.xi, pe.t0, "plan", planId, e);
    edgeDuration = std::max(pe.dt, requestMinDuration(*active->spec, x, pe.xi, pe.t0));
  };

  auto request = [&]() {
    PlanRecord rec;
    rec.id = static_cast<int>(trace.plans.size());
    rec.requestTick = tick;
    rec.snapshot = x;
    rec.seed = s.search.rngSeed + static_cast<std::uint64_t>(rec.id) * static_cast<std::uint64_t>(s.parallelSearches);
    rec.outcome = "pending";
    Pending p;
    p.record = rec.id;
    if (deterministic) {
      p.ready = detail::computePlan(goal, x, registry, s.search, s.refine, cost, s.parallelSearches, rec.seed);
      p.deliverTick = tick + latency;
    } else {
      p.future = std::async(std::launch::async, detail::computePlan, goal, x, std::cref(registry),
                            s.search, s.refine, cost, s.parallelSearches, rec.seed);
    }
    if (!trace.plans.empty()) ++summary.replanCount;
    ++summary.planRequests;
    detail::addEvent(events, "plan_request:" + std::to_string(rec.id));
    trace.plans.push_back(std::move(rec));
    pending = std::move(p);
  };

  auto dropPlan = [&]() {
    plan.reset();
    planId = -1;
    edge = -1;
  };

  auto fallback = [&]() {
    const auto& order = detail::anyFootOff(x) ? s.exec.fallbackAirborne : s.exec.fallbackGrounded;
    for (const auto& id : order) {
      if (active && active->spec->id == id) {
        detail::addEvent(events, "fallback_keep:" + id);
        return;
      }
      const auto& spec = registry.at(id);
      if (spec.safeRoA(x, Vector(), 0.0)) {
        activate(id, Vector(), 0.0, "fallback", -1, -1);
        return;
      }
    }
    detail::addEvent(events, "no_fallback");
    summary.failures.push_back("NoFallbackAvailable at t=" + formatDouble(t, 6));
  };

  // Returns the outcome once the pending plan is available at this tick.
  auto poll = [&]() -> std::optional<detail::PlanOutcome> {
    if (!pending) return std::nullopt;
    if (deterministic) {
      if (tick < pending->deliverTick) return std::nullopt;
      return std::move(pending->ready);
    }
    if (pending->future.wait_for(std::chrono::seconds(0)) != std::future_status::ready) return std::nullopt;
    return pending->future.get();
  };

  auto record = [&](bool violation) {
    TickRecord r;
    r.tick = tick;
    r.t = t;
    r.x = x;
    r.planId = planId;
    r.edge = edge;
    r.replanning = pending.has_value();
    r.violation = violation;
    if (active) {
      r.active = active->spec->id;
      r.xi = active->xi;
      r.error = active->spec->norm.distance(x, active->setpointAt(t));
    }
    r.events = std::move(events);
    events.clear();
    summary.maxDeviation = std::max(summary.maxDeviation, r.error);
    if (violation) ++summary.violationTicks;
    trace.ticks.push_back(std::move(r));
  };

  request();
  record(false);

  for (tick = 1; tick <= numTicks; ++tick) {
    const double tPrev = t;
    t = tick * s.dt;
    if (!deterministic) std::this_thread::sleep_until(wallStart + std::chrono::duration<double>(t));
    x = bench::stepPlant(x, active ? &*active : nullptr, tPrev, s.dt, disturbances);

    bool violation = false;
    bool replan = false;
    if (active) {
      const double clock = active->clockAt(t);
      violation = !active->spec->safeSet(x, active->xi, clock);
      const bool invalid =
          !violation && !bench::trackingWithinRoA(s.plant, active->spec->id, x, active->setpointAt(t));
      if (violation || invalid) {
        detail::addEvent(events, violation ? "violation" : "invalidated");
        dropPlan();
        fallback();
        replan = true;
      } else if (plan && edge + 1 < static_cast<int>(plan->size())) {
        const double elapsed = t - active->activationTime;
        if (elapsed >= edgeDuration - 1e-9) {
          const auto& next = plan->edges[static_cast<std::size_t>(edge + 1)];
          if (registry.at(next.primitiveId).safeRoA(x, next.xi, next.t0)) {
            startEdge(edge + 1);
          } else if (elapsed >= edgeDuration + s.exec.handoffGrace) {
            detail::addEvent(events, "handoff_failed");
            dropPlan();
            fallback();
            replan = true;
          }
        }
      }
    }

    if (auto outcome = poll()) {
      auto& rec = trace.plans[static_cast<std::size_t>(pending->record)];
      pending.reset();
      rec.deliverTick = tick;
      rec.computeMs = outcome->computeMs;
      rec.status = outcome->result.status;
      if (outcome->result.ok()) {
        rec.path = outcome->result.path;
        rec.rawCost = outcome->result.runs[static_cast<std::size_t>(outcome->result.bestRun)].rawCost;
        if (adoptionCheck(*rec.path, x, s.exec.adoptionTolerance, registry)) {
          rec.adopted = true;
          rec.outcome = "adopted";
          detail::addEvent(events, "plan_adopted:" + std::to_string(rec.id));
          plan = rec.path;
          planId = rec.id;
          startEdge(0);
        } else {
          rec.outcome = "rejected";
          detail::addEvent(events, "plan_rejected:" + std::to_string(rec.id));
          replan = true;
        }
      } else {
        rec.outcome = "failed";
        detail::addEvent(events, "plan_failed:" + std::to_string(rec.id));
        replan = true;
      }
    }

    if (replan && !pending) request();
    record(violation);
  }

  // Goal attainment: the goal primitive with the commanded arguments is
  // active and the tracking error is within epsilon.
  auto atGoal = [&](const TickRecord& r) {
    return r.active == goal.primitiveId && r.xi.size() == goal.xi.size() && r.xi == goal.xi &&
           r.error <= epsilon;
  };
  const auto& last = trace.ticks.back();
  summary.finalPrimitive = last.active;
  summary.finalError = last.error;
  summary.goalReached = atGoal(last);
  if (summary.goalReached) {
    std::size_t i = trace.ticks.size() - 1;
    while (i > 0 && atGoal(trace.ticks[i - 1])) --i;
    summary.goalReachedTime = trace.ticks[i].t;
  }
  if (pending && !deterministic && pending->future.valid()) pending->future.wait();
  summary.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
  return trace;
}

inline RunTrace runScenario(const Scenario& s) {
  s.validate();
  return runScenario(s, bench::buildBenchRegistry(s.plant));
}

}  // namespace mpg::exec
