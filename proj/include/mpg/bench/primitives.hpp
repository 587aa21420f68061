#pragma once

#include <cmath>
#include <string>

#include "mpg/bench/config.hpp"
#include "mpg/bench/plant_state.hpp"
#include "mpg/core/errors.hpp"
#include "mpg/core/primitive.hpp"

namespace mpg::bench {

inline const std::string kLie = "LieB";
inline const std::string kStand = "StandB";
inline const std::string kWalk = "WalkB";
inline const std::string kLand = "LandB";

using BenchSpec = PrimitiveSpec<PlantState>;
using BenchRegistry = Registry<PlantState>;

/// Trot contact pattern at clock `t`. Each half period starts with a double
/// support window (all feet down), then one diagonal pair carries the body:
/// FL+RR in the first half, FR+RL in the second.
inline Contacts gaitContacts(double t, double period, double doubleSupportFraction) {
  double phase = t / period;
  phase -= std::floor(phase);
  const bool secondHalf = phase >= 0.5;
  const double local = (phase - (secondHalf ? 0.5 : 0.0)) * 2.0;
  if (local < doubleSupportFraction) return kAllContacts;
  return secondHalf ? Contacts{false, true, true, false} : Contacts{true, false, false, true};
}

inline bool insideSafeBox(const PlantState& x, const SafeBox& box) {
  return box.h.contains(x.h) && std::abs(x.theta[0]) <= box.tiltMax &&
         std::abs(x.theta[1]) <= box.tiltMax && std::abs(x.v[0]) <= box.planarSpeedMax &&
         std::abs(x.v[1]) <= box.planarSpeedMax && box.vz.contains(x.vz) && x.finite();
}

namespace detail {

// Pose profile used by LieB and StandB. The pose moves on a straight line to
// its target with distance d(s) = (d0^(1/3) - c s)^3, a cubic in time that
// arrives with zero velocity and acceleration. Because the speed is a function
// of the remaining distance only, re-anchoring on the profile reproduces it
// exactly. Arrival takes splineDuration * (d0 / splineReferenceDistance)^(1/3).
struct PoseProfile {
  std::array<double, 4> target{};  // h, roll, pitch, yaw
  double splineDuration = 1.0;
  double referenceDistance = 0.2;

  struct Eval {
    std::array<double, 4> delta{};
    double d = 0.0;
    double a = 0.0;  // inverse arrival time
    double u = 0.0;  // remaining fraction^(1/3)
  };

  Eval eval(const PlantState& x0, double s) const {
    Eval e;
    e.delta = {x0.h - target[0], x0.theta[0] - target[1], x0.theta[1] - target[2],
               x0.theta[2] - target[3]};
    double sq = 0.0;
    for (double v : e.delta) sq += v * v;
    e.d = std::sqrt(sq);
    if (e.d > 0.0) {
      e.a = std::cbrt(referenceDistance / e.d) / splineDuration;
      e.u = std::max(0.0, 1.0 - e.a * s);
    }
    return e;
  }

  PlantState setpoint(const PlantState& x0, double s) const {
    const Eval e = eval(x0, s);
    PlantState out = x0;
    const double u3 = e.u * e.u * e.u;
    out.h = target[0] + e.delta[0] * u3;
    out.theta = {target[1] + e.delta[1] * u3, target[2] + e.delta[2] * u3,
                 target[3] + e.delta[3] * u3};
    out.v = {0.0, 0.0};
    out.vz = -3.0 * e.a * e.delta[0] * e.u * e.u;
    out.contacts = kAllContacts;
    return out;
  }

  // Columns 0..3: d / d target (h, roll, pitch, yaw); column 4: d / d s.
  Matrix jacobian(const PlantState& x0, double s) const {
    const Eval e = eval(x0, s);
    Matrix j = Matrix::Zero(kNumCoords, 5);
    static constexpr int kPose[4] = {kH, kThx, kThy, kThz};
    if (e.d == 0.0 || e.u == 0.0) {
      for (int k = 0; k < 4; ++k) j(kPose[k], k) = 1.0;
      return j;
    }
    const double u = e.u, u2 = u * u, u3 = u2 * u;
    for (int k = 0; k < 4; ++k) {
      const double da = e.a * e.delta[k] / (3.0 * e.d * e.d);
      const double du = -s * da;
      for (int i = 0; i < 4; ++i) {
        j(kPose[i], k) = (i == k ? 1.0 - u3 : 0.0) + 3.0 * e.delta[i] * u2 * du;
      }
      j(kVz, k) = -3.0 * (da * e.delta[0] * u2 - (k == 0 ? e.a * u2 : 0.0) +
                          2.0 * e.a * e.delta[0] * u * du);
    }
    for (int i = 0; i < 4; ++i) j(kPose[i], 4) = -3.0 * e.a * e.delta[i] * u2;
    j(kVz, 4) = 6.0 * e.a * e.a * e.delta[0] * u;
    return j;
  }
};

inline bool contactRuleHolds(ContactRule rule, const Contacts& c, const Contacts& gait) {
  switch (rule) {
    case ContactRule::kIgnore: return true;
    case ContactRule::kAny: return c[0] || c[1] || c[2] || c[3];
    case ContactRule::kAll: return c == kAllContacts;
    case ContactRule::kGaitOrAll: return c == kAllContacts || c == gait;
  }
  return false;
}

inline bool roaHolds(const RoABox& box, const PlantState& x0, const PlantState& anchorSetpoint,
                     const Contacts& gait) {
  if (!contactRuleHolds(box.contacts, x0.contacts, gait)) return false;
  if (!box.h.contains(x0.h) || !box.vz.contains(x0.vz)) return false;
  if (std::abs(x0.theta[0]) > box.tiltMax || std::abs(x0.theta[1]) > box.tiltMax) return false;
  const Vector e = x0.coords() - anchorSetpoint.coords();
  for (int i = 0; i < kNumCoords; ++i) {
    if (std::abs(e[i]) > box.errorMax[i]) return false;
  }
  return true;
}

inline BenchSpec makeSpecBase(const std::string& id, const PrimitiveTuning& tuning,
                              const PlantConfig& cfg) {
  BenchSpec s;
  s.id = id;
  s.envelope = StabilityEnvelope{tuning.overshoot, tuning.rate, cfg.epsilon};
  s.norm = WeightedNorm(Eigen::Map<const Vector>(cfg.normWeights.data(), kNumCoords));
  return s;
}

}  // namespace detail

/// LieB: no arguments; spline to the lie pose (lie height, level, yaw kept).
inline BenchSpec makeLie(const PlantConfig& cfg) {
  BenchSpec s = detail::makeSpecBase(kLie, cfg.lie, cfg);
  s.args = ArgumentDomain::empty();
  auto profile = [cfg](const PlantState& x0) {
    return detail::PoseProfile{{cfg.lieHeight, 0.0, 0.0, x0.theta[2]},
                               cfg.splineDuration,
                               cfg.splineReferenceDistance};
  };
  s.setpoint = [profile](const PlantState& x0, const Vector&, double t0, double t) {
    return profile(x0).setpoint(x0, t - t0);
  };
  s.setpointJacobian = [profile](const PlantState& x0, const Vector&, double t0, double t) {
    const Matrix full = profile(x0).jacobian(x0, t - t0);
    Matrix j(kNumCoords, 2);
    j.col(0) = -full.col(4);
    j.col(1) = full.col(4);
    return j;
  };
  const SafeBox box = cfg.safeBox;
  s.safeSet = [box](const PlantState& x, const Vector&, double) {
    return insideSafeBox(x, box) && detail::contactRuleHolds(ContactRule::kAny, x.contacts, {});
  };
  const RoABox roa = cfg.lie.roa;
  auto safeSet = s.safeSet;
  auto setpoint = s.setpoint;
  s.safeRoA = [=](const PlantState& x0, const Vector& xi, double t0) {
    return safeSet(x0, xi, t0) && detail::roaHolds(roa, x0, setpoint(x0, xi, t0, t0), {});
  };
  return s;
}

/// StandB: xi = (h, roll, pitch, yaw) targets; spline from the anchor pose.
inline BenchSpec makeStand(const PlantConfig& cfg) {
  BenchSpec s = detail::makeSpecBase(kStand, cfg.stand, cfg);
  Vector lo(4), hi(4);
  lo << cfg.standHeight.lo, cfg.standAngle.lo, cfg.standAngle.lo, cfg.standAngle.lo;
  hi << cfg.standHeight.hi, cfg.standAngle.hi, cfg.standAngle.hi, cfg.standAngle.hi;
  s.args = ArgumentDomain(lo, hi);
  auto profile = [cfg](const Vector& xi) {
    return detail::PoseProfile{{xi[0], xi[1], xi[2], xi[3]},
                               cfg.splineDuration,
                               cfg.splineReferenceDistance};
  };
  s.setpoint = [profile](const PlantState& x0, const Vector& xi, double t0, double t) {
    return profile(xi).setpoint(x0, t - t0);
  };
  s.setpointJacobian = [profile](const PlantState& x0, const Vector& xi, double t0, double t) {
    const Matrix full = profile(xi).jacobian(x0, t - t0);
    Matrix j(kNumCoords, 6);
    j.leftCols(4) = full.leftCols(4);
    j.col(4) = -full.col(4);
    j.col(5) = full.col(4);
    return j;
  };
  const SafeBox box = cfg.safeBox;
  s.safeSet = [box](const PlantState& x, const Vector&, double) {
    return insideSafeBox(x, box) && x.contacts == kAllContacts;
  };
  const RoABox roa = cfg.stand.roa;
  auto safeSet = s.safeSet;
  auto setpoint = s.setpoint;
  s.safeRoA = [=](const PlantState& x0, const Vector& xi, double t0) {
    return safeSet(x0, xi, t0) && detail::roaHolds(roa, x0, setpoint(x0, xi, t0, t0), {});
  };
  return s;
}

/// WalkB: xi = (h, vx, vy, yaw rate); constant world-frame velocity at the
/// commanded height, trot contacts on the primitive clock.
inline BenchSpec makeWalk(const PlantConfig& cfg) {
  BenchSpec s = detail::makeSpecBase(kWalk, cfg.walk, cfg);
  Vector lo(4), hi(4);
  lo << cfg.walkHeight.lo, cfg.walkVx.lo, cfg.walkVy.lo, cfg.walkYawRate.lo;
  hi << cfg.walkHeight.hi, cfg.walkVx.hi, cfg.walkVy.hi, cfg.walkYawRate.hi;
  s.args = ArgumentDomain(lo, hi);
  s.clockInvariant = false;
  const double period = cfg.gaitPeriod;
  const double ds = cfg.doubleSupportFraction;
  s.setpoint = [period, ds](const PlantState& x0, const Vector& xi, double t0, double t) {
    const double dt = t - t0;
    PlantState out;
    out.h = xi[0];
    out.theta = {0.0, 0.0, x0.theta[2] + xi[3] * dt};
    out.p = {x0.p[0] + xi[1] * dt, x0.p[1] + xi[2] * dt};
    out.v = {xi[1], xi[2]};
    out.vz = 0.0;
    out.contacts = gaitContacts(t, period, ds);
    return out;
  };
  s.setpointJacobian = [](const PlantState&, const Vector& xi, double t0, double t) {
    const double dt = t - t0;
    Matrix j = Matrix::Zero(kNumCoords, 6);
    j(kH, 0) = 1.0;
    j(kPx, 1) = dt;
    j(kVx, 1) = 1.0;
    j(kPy, 2) = dt;
    j(kVy, 2) = 1.0;
    j(kThz, 3) = dt;
    j(kPx, 5) = xi[1];
    j(kPy, 5) = xi[2];
    j(kThz, 5) = xi[3];
    j.col(4) = -j.col(5);
    return j;
  };
  const SafeBox box = cfg.safeBox;
  s.safeSet = [box, period, ds](const PlantState& x, const Vector&, double t) {
    if (!insideSafeBox(x, box)) return false;
    const Contacts stance = gaitContacts(t, period, ds);
    for (int i = 0; i < kNumFeet; ++i) {
      if (stance[i] && !x.contacts[i]) return false;
    }
    return true;
  };
  const RoABox roa = cfg.walk.roa;
  auto safeSet = s.safeSet;
  auto setpoint = s.setpoint;
  s.safeRoA = [=](const PlantState& x0, const Vector& xi, double t0) {
    const PlantState ref = setpoint(x0, xi, t0, t0);
    return safeSet(x0, xi, t0) && detail::roaHolds(roa, x0, ref, ref.contacts);
  };
  return s;
}

/// LandB: no arguments; from an airborne anchor (no foot down, above the
/// landing height) ballistic flight down to the landing height, then rest.
/// Other anchors come to rest in place. Attitude is held.
inline BenchSpec makeLand(const PlantConfig& cfg) {
  BenchSpec s = detail::makeSpecBase(kLand, cfg.land, cfg);
  s.args = ArgumentDomain::empty();
  const double hl = cfg.landHeight;
  const double g = cfg.gravity;
  auto touchdown = [hl, g](const PlantState& x0) {
    if (!(x0.h > hl) || x0.contactCount() > 0) return 0.0;
    return (x0.vz + std::sqrt(x0.vz * x0.vz + 2.0 * g * (x0.h - hl))) / g;
  };
  s.setpoint = [=](const PlantState& x0, const Vector&, double t0, double t) {
    const double dt = t - t0;
    const double tl = touchdown(x0);
    PlantState out = x0;
    if (tl > 0.0 && dt < tl) {
      out.h = x0.h + x0.vz * dt - 0.5 * g * dt * dt;
      out.vz = x0.vz - g * dt;
      out.p = {x0.p[0] + x0.v[0] * dt, x0.p[1] + x0.v[1] * dt};
      out.contacts = kNoContacts;
    } else {
      out.h = tl > 0.0 ? hl : x0.h;
      out.vz = 0.0;
      out.p = {x0.p[0] + x0.v[0] * tl, x0.p[1] + x0.v[1] * tl};
      out.v = {0.0, 0.0};
      out.contacts = kAllContacts;
    }
    return out;
  };
  s.setpointJacobian = [=](const PlantState& x0, const Vector&, double t0, double t) {
    const double dt = t - t0;
    const double tl = touchdown(x0);
    Matrix j = Matrix::Zero(kNumCoords, 2);
    if (tl > 0.0 && dt < tl) {
      j(kH, 1) = x0.vz - g * dt;
      j(kVz, 1) = -g;
      j(kPx, 1) = x0.v[0];
      j(kPy, 1) = x0.v[1];
    }
    j.col(0) = -j.col(1);
    return j;
  };
  const SafeBox box = cfg.safeBox;
  s.safeSet = [box](const PlantState& x, const Vector&, double) { return insideSafeBox(x, box); };
  const RoABox roa = cfg.land.roa;
  auto safeSet = s.safeSet;
  auto setpoint = s.setpoint;
  s.safeRoA = [=](const PlantState& x0, const Vector& xi, double t0) {
    return safeSet(x0, xi, t0) && detail::roaHolds(roa, x0, setpoint(x0, xi, t0, t0), {});
  };
  return s;
}

inline const PrimitiveTuning& tuningFor(const PlantConfig& cfg, const std::string& id) {
  if (id == kLie) return cfg.lie;
  if (id == kStand) return cfg.stand;
  if (id == kWalk) return cfg.walk;
  if (id == kLand) return cfg.land;
  throw UnknownPrimitive(id);
}

/// Check for a primitive that is already running: the live state against its
/// setpoint `ref` at the current clock. Uses the primitive's RoA error box,
/// its tilt bound applied to the attitude error, and its contact rule (the
/// gait pattern is the one the setpoint prescribes).
inline bool trackingWithinRoA(const PlantConfig& cfg, const std::string& id, const PlantState& x,
                              const PlantState& ref) {
  const RoABox& box = tuningFor(cfg, id).roa;
  if (!detail::contactRuleHolds(box.contacts, x.contacts, ref.contacts)) return false;
  if (std::abs(x.theta[0] - ref.theta[0]) > box.tiltMax ||
      std::abs(x.theta[1] - ref.theta[1]) > box.tiltMax) {
    return false;
  }
  const Vector e = x.coords() - ref.coords();
  for (int i = 0; i < kNumCoords; ++i) {
    if (std::abs(e[i]) > box.errorMax[i]) return false;
  }
  return true;
}

/// LieB, StandB, WalkB, LandB in that order.
inline BenchRegistry buildBenchRegistry(const PlantConfig& cfg) {
  cfg.validate();
  BenchRegistry r;
  r.add(makeLie(cfg));
  r.add(makeStand(cfg));
  r.add(makeWalk(cfg));
  r.add(makeLand(cfg));
  return r;
}

}  // namespace mpg::bench
