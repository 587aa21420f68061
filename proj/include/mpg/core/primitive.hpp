#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mpg/core/types.hpp"

namespace mpg {

// A motion primitive, abstracted to what planning needs.
//
// Time convention: a primitive runs on its own clock. It is activated from an
// anchor state `x0` when its clock reads `t0`, and its setpoint is evaluated at
// clock time `t >= t0`. Time-varying safe sets (gait schedules) read the clock
// value directly. Re-anchoring on the setpoint itself reproduces the setpoint:
//   setpoint(x0, xi, t0, t0 + a + b) == setpoint(setpoint(x0, xi, t0, t0 + a), xi, t0 + a, t0 + a + b)
//
// The control law and the true region of attraction are never represented;
// `safeRoA` is a conservative inner estimate supplied by the designer and must
// imply `safeSet` at the anchor.
template <PlanningState State>
struct PrimitiveSpec {
  using SetpointFn = std::function<State(const State& x0, const Vector& xi, double t0, double t)>;
  using SafeSetFn = std::function<bool(const State& x, const Vector& xi, double t)>;
  using SafeRoAFn = std::function<bool(const State& x0, const Vector& xi, double t0)>;
  // Columns: d coords / d xi_1..xi_a, d / d t0, d / d t.
  using JacobianFn =
      std::function<Matrix(const State& x0, const Vector& xi, double t0, double t)>;

  std::string id;
  ArgumentDomain args;
  StabilityEnvelope envelope;
  WeightedNorm norm;
  SetpointFn setpoint;
  SafeSetFn safeSet;
  SafeRoAFn safeRoA;
  JacobianFn setpointJacobian;  // optional
  // True when the continuous setpoint depends on the clock only through t - t0.
  bool clockInvariant = true;

  bool hasJacobian() const { return static_cast<bool>(setpointJacobian); }

  /// Tracking error of `x` against the setpoint anchored at `x` itself.
  double anchorError(const State& x0, const Vector& xi, double t0) const {
    return norm.distance(x0, setpoint(x0, xi, t0, t0));
  }
};

/// Ordered, immutable-after-build set of primitives addressed by id.
template <PlanningState State>
class Registry {
 public:
  using Spec = PrimitiveSpec<State>;

  Registry() = default;

  void add(Spec spec) {
    if (spec.id.empty()) throw ConfigInvalid("primitive id must not be empty");
    if (index_.count(spec.id)) throw ConfigInvalid("duplicate primitive id: " + spec.id);
    spec.envelope.validate();
    if (!spec.setpoint || !spec.safeSet || !spec.safeRoA) {
      throw ConfigInvalid("primitive " + spec.id + " is missing a setpoint or safety predicate");
    }
    if (spec.norm.weights().size() != static_cast<Eigen::Index>(StateTraits<State>::kDim)) {
      throw DimensionMismatch("primitive " + spec.id + " norm weights vs state dimension");
    }
    index_.emplace(spec.id, specs_.size());
    specs_.push_back(std::make_shared<const Spec>(std::move(spec)));
  }

  const Spec& at(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownPrimitive(id);
    return *specs_[it->second];
  }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t size() const { return specs_.size(); }
  bool empty() const { return specs_.empty(); }
  const Spec& operator[](std::size_t i) const { return *specs_[i]; }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    out.reserve(specs_.size());
    for (const auto& s : specs_) out.push_back(s->id);
    return out;
  }

 private:
  std::vector<std::shared_ptr<const Spec>> specs_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace mpg
