#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpg/bench/primitives.hpp"

namespace mpg::bench {

enum class DisturbanceKind { kImpulse, kHold, kContactEvent };

// Components a hold can clamp: the continuous coordinates, then feet 0..3.
inline constexpr int kHoldContactBase = static_cast<int>(kNumCoords);
inline constexpr int kNumHoldComponents = kHoldContactBase + static_cast<int>(kNumFeet);

inline std::optional<int> holdComponentIndex(const std::string& name) {
  for (int i = 0; i < kNumCoords; ++i) {
    if (kCoordNames[i] == name) return i;
  }
  for (int i = 0; i < kNumFeet; ++i) {
    if (name == "c" + std::to_string(i)) return kHoldContactBase + i;
  }
  return std::nullopt;
}

inline std::string holdComponentName(int index) {
  if (index < kNumCoords) return std::string(kCoordNames[index]);
  return "c" + std::to_string(index - kHoldContactBase);
}

struct Disturbance {
  DisturbanceKind kind = DisturbanceKind::kImpulse;
  double time = 0.0;  // s

  // kImpulse: state jump.
  std::array<double, 3> dTheta{};
  std::array<double, 2> dV{};
  double dVz = 0.0;

  // kHold: clamp one component to `value` over [time, time + window].
  double window = 0.0;
  int component = 0;
  double value = 0.0;

  // kContactEvent: new contact flags and a height jump.
  Contacts contacts{};
  double heightOffset = 0.0;

  bool operator==(const Disturbance&) const = default;

  void validate() const {
    if (!(time >= 0.0)) throw ConfigInvalid("disturbance time must be >= 0");
    if (kind == DisturbanceKind::kHold) {
      if (!(window >= 0.0)) throw ConfigInvalid("hold window must be >= 0");
      if (component < 0 || component >= kNumHoldComponents) throw ConfigInvalid("hold component");
    }
  }

  bool holdActiveAt(double t) const {
    return kind == DisturbanceKind::kHold && t >= time && t <= time + window;
  }
};

/// The primitive currently driving the plant, anchored where it was activated.
struct ActivePrimitive {
  const BenchSpec* spec = nullptr;
  Vector xi;
  PlantState anchor;
  double anchorClock = 0.0;     // primitive clock at activation
  double activationTime = 0.0;  // simulation time at activation

  double clockAt(double simTime) const { return anchorClock + (simTime - activationTime); }

  PlantState setpointAt(double simTime) const {
    return spec->setpoint(anchor, xi, anchorClock, clockAt(simTime));
  }
};

inline void applyInstant(PlantState& x, const Disturbance& d) {
  switch (d.kind) {
    case DisturbanceKind::kImpulse:
      for (int i = 0; i < 3; ++i) x.theta[i] += d.dTheta[i];
      x.v[0] += d.dV[0];
      x.v[1] += d.dV[1];
      x.vz += d.dVz;
      break;
    case DisturbanceKind::kContactEvent:
      x.contacts = d.contacts;
      x.h += d.heightOffset;
      break;
    case DisturbanceKind::kHold:
      break;
  }
}

inline void applyHold(PlantState& x, const Disturbance& d) {
  if (d.component >= kHoldContactBase) {
    x.contacts[d.component - kHoldContactBase] = d.value != 0.0;
    return;
  }
  Vector c = x.coords();
  c[d.component] = d.value;
  x.setCoords(c);
}

// Advances the plant from simTime to simTime + dt. Under an active primitive
// the continuous tracking error decays exactly, e(t + dt) = e(t) exp(-alpha dt),
// and contacts follow the primitive's setpoint. Without one the plant is
// passive and keeps its state. Impulses and contact events timed in
// [simTime, simTime + dt) are applied after the decay, then every hold active
// at simTime + dt clamps its component.
inline PlantState stepPlant(const PlantState& x, const ActivePrimitive* active, double simTime,
                            double dt, std::span<const Disturbance> disturbances) {
  if (!(dt > 0.0)) throw std::invalid_argument("plant step requires dt > 0");
  PlantState next = x;
  if (active != nullptr && active->spec != nullptr) {
    const PlantState ref0 = active->setpointAt(simTime);
    const PlantState ref1 = active->setpointAt(simTime + dt);
    const double decay = std::exp(-active->spec->envelope.rate * dt);
    next = PlantState::fromCoords(ref1.coords() + (x.coords() - ref0.coords()) * decay,
                                  ref1.contacts);
  }
  const double t1 = simTime + dt;
  for (const auto& d : disturbances) {
    if (d.kind != DisturbanceKind::kHold && d.time >= simTime && d.time < t1) applyInstant(next, d);
  }
  for (const auto& d : disturbances) {
    if (d.holdActiveAt(t1)) applyHold(next, d);
  }
  return next;
}

}  // namespace mpg::bench
