#pragma once

#include <array>
#include <limits>
#include <string>

#include "mpg/bench/plant_state.hpp"
#include "mpg/core/errors.hpp"

namespace mpg::bench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool operator==(const Interval&) const = default;
};

enum class ContactRule {
  kIgnore,      // no condition
  kAny,         // at least one foot down
  kAll,         // every foot down
  kGaitOrAll,   // exactly the gait pattern at the anchor clock, or every foot down
};

/// Stand-in for the joint position/velocity limits shared by all primitives.
struct SafeBox {
  Interval h{0.0, 1.2};
  double tiltMax = 0.6;      // |roll|, |pitch|
  double planarSpeedMax = 1.5;  // |vx|, |vy|
  Interval vz{-6.0, 6.0};

  bool operator==(const SafeBox&) const = default;
};

/// Conservative safe region-of-attraction estimate: absolute bounds on the
/// anchor state plus an axis-aligned box on the anchor error
/// x0 - setpoint(x0, xi, t0, t0).
struct RoABox {
  ContactRule contacts = ContactRule::kIgnore;
  Interval h;
  double tiltMax = kInf;
  Interval vz;
  std::array<double, kNumCoords> errorMax{kInf, kInf, kInf, kInf, kInf,
                                          kInf, kInf, kInf, kInf};

  bool operator==(const RoABox&) const = default;
};

struct PrimitiveTuning {
  double rate = 4.0;       // 1/s, closed-loop error decay
  double overshoot = 1.2;  // M used when bounding durations
  RoABox roa;

  bool operator==(const PrimitiveTuning&) const = default;
};

struct PlantConfig {
  double epsilon = 1e-2;
  std::array<double, kNumCoords> normWeights{1, 1, 1, 1, 1, 1, 1, 1, 1};
  SafeBox safeBox;

  double gaitPeriod = 0.5;             // s
  double doubleSupportFraction = 0.2;  // of each half period
  double lieHeight = 0.08;             // m
  double landHeight = 0.20;            // m
  double gravity = 9.81;               // m/s^2
  double splineDuration = 1.0;         // s, for a pose change of splineReferenceDistance
  double splineReferenceDistance = 0.2;

  Interval standHeight{0.12, 0.30};
  Interval standAngle{-0.3, 0.3};
  Interval walkHeight{0.18, 0.30};
  Interval walkVx{-0.5, 0.5};
  Interval walkVy{-0.5, 0.5};
  Interval walkYawRate{-0.5, 0.5};

  PrimitiveTuning lie{4.0, 1.2, lieRoA()};
  PrimitiveTuning stand{4.0, 1.2, standRoA()};
  PrimitiveTuning walk{3.0, 1.2, walkRoA()};
  PrimitiveTuning land{5.0, 1.2, landRoA()};

  bool operator==(const PlantConfig&) const = default;

  static RoABox lieRoA() {
    RoABox b;
    b.contacts = ContactRule::kAll;
    b.h = {0.0, 0.35};
    b.tiltMax = 0.5;
    b.errorMax[kVx] = b.errorMax[kVy] = 0.6;
    b.errorMax[kVz] = 1.5;
    return b;
  }

  static RoABox standRoA() {
    RoABox b;
    b.contacts = ContactRule::kAll;
    b.h = {0.07, 0.35};
    b.tiltMax = 0.08;
    b.errorMax[kVx] = b.errorMax[kVy] = 0.25;
    b.errorMax[kVz] = 1.5;
    return b;
  }

  static RoABox walkRoA() {
    RoABox b;
    b.contacts = ContactRule::kGaitOrAll;
    b.h = {0.17, 0.33};
    b.tiltMax = 0.25;
    b.errorMax[kH] = 0.08;
    b.errorMax[kThx] = b.errorMax[kThy] = 0.25;
    b.errorMax[kVx] = b.errorMax[kVy] = 0.4;
    b.errorMax[kVz] = 0.5;
    return b;
  }

  static RoABox landRoA() {
    RoABox b;
    b.h = {0.0, 1.0};
    b.vz = {-6.0, 2.0};
    return b;
  }

  void validate() const {
    auto bad = [](const std::string& what) { throw ConfigInvalid("plant config: " + what); };
    if (!(epsilon > 0)) bad("epsilon must be positive");
    for (double w : normWeights) if (!(w >= 0)) bad("norm weights must be non-negative");
    for (const Interval* i : {&safeBox.h, &safeBox.vz, &standHeight, &standAngle, &walkHeight,
                              &walkVx, &walkVy, &walkYawRate}) {
      if (!(i->lo < i->hi)) bad("every box needs lower < upper");
    }
    if (!(safeBox.tiltMax > 0) || !(safeBox.planarSpeedMax > 0)) bad("safe box limits must be positive");
    if (!(gaitPeriod > 0)) bad("gait period must be positive");
    if (!(doubleSupportFraction >= 0 && doubleSupportFraction < 1)) bad("double support fraction in [0,1)");
    if (!(lieHeight > 0) || !(landHeight > 0) || !(gravity > 0)) bad("heights and gravity must be positive");
    if (!(splineDuration > 0) || !(splineReferenceDistance > 0)) bad("spline timing must be positive");
    for (const PrimitiveTuning* t : {&lie, &stand, &walk, &land}) {
      if (!(t->rate > 0)) bad("decay rates must be positive");
      if (!(t->overshoot >= 1)) bad("overshoot must be >= 1");
      if (!(t->roa.h.lo <= t->roa.h.hi) || !(t->roa.vz.lo <= t->roa.vz.hi)) bad("RoA bounds reversed");
      if (!(t->roa.tiltMax >= 0)) bad("RoA tilt must be non-negative");
      for (double e : t->roa.errorMax) if (!(e >= 0)) bad("RoA error box must be non-negative");
    }
  }
};

}  // namespace mpg::bench
