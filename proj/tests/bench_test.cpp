#include <gtest/gtest.h>

#include <cmath>

#include "mpg/bench/plant.hpp"
#include "mpg/core/transfer.hpp"
#include "test_support.hpp"

using namespace mpg;
using namespace mpg::bench;
using mpg::fixtures::vec;

namespace {

const BenchRegistry& registry() {
  static const BenchRegistry r = buildBenchRegistry(PlantConfig{});
  return r;
}

double maxAbs(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

// Draws an anchor state inside the primitive's safe RoA for random arguments and clock.
struct RoADraw {
  PlantState x0;
  Vector xi;
  double t0;
};

RoADraw drawInRoA(const BenchSpec& spec, Rng& rng) {
  for (;;) {
    RoADraw d{{}, fixtures::sampleArgs(rng, spec.args), rng.uniform(0.0, 0.5)};
    try {
      d.x0 = fixtures::sampleState(rng, [&](const PlantState& x) { return spec.safeRoA(x, d.xi, d.t0); },
                                   2000);
      return d;
    } catch (const std::runtime_error&) {
      // Retry with fresh arguments.
    }
  }
}

}  // namespace

TEST(BenchRegistry, HoldsFourPrimitivesInOrder) {
  EXPECT_EQ(registry().ids(), (std::vector<std::string>{kLie, kStand, kWalk, kLand}));
  EXPECT_EQ(registry().at(kLie).args.dimension(), 0);
  EXPECT_EQ(registry().at(kLand).args.dimension(), 0);
}

TEST(BenchRegistry, InvalidConfigRejected) {
  PlantConfig cfg;
  cfg.walk.rate = 0.0;
  EXPECT_THROW(buildBenchRegistry(cfg), ConfigInvalid);
  cfg = PlantConfig{};
  cfg.standHeight = {0.3, 0.1};
  EXPECT_THROW(buildBenchRegistry(cfg), ConfigInvalid);
}

TEST(StandB, ArgumentDomain) {
  const auto& stand = registry().at(kStand);
  EXPECT_TRUE(stand.args.contains(vec({0.25, 0, 0, 0})));
  EXPECT_FALSE(stand.args.contains(vec({0.35, 0, 0, 0})));
  EXPECT_TRUE(stand.args.contains(vec({0.12, -0.3, 0.3, 0})));
  EXPECT_THROW(applyTransfer(stand, TransferRequest<PlantState>{fixtures::standingState(), kStand,
                                                                vec({0.35, 0, 0, 0}), 0, 5}),
               ArgumentOutOfDomain);
}

TEST(StandB, TransferReachesCommandedHeightAtRest) {
  const auto& stand = registry().at(kStand);
  PlantState x0 = fixtures::standingState(0.2);
  auto r = applyTransfer(stand, TransferRequest<PlantState>{x0, kStand, vec({0.25, 0, 0, 0}), 0, 3});
  ASSERT_TRUE(r.applied);
  EXPECT_DOUBLE_EQ(r.xOut.h, 0.25);
  EXPECT_EQ(r.xOut.v[0], 0.0);
  EXPECT_EQ(r.xOut.v[1], 0.0);
  EXPECT_EQ(r.xOut.vz, 0.0);
  EXPECT_EQ(r.xOut.contacts, kAllContacts);
}

TEST(WalkB, ConstantVelocitySetpoint) {
  const auto& walk = registry().at(kWalk);
  PlantState x0 = fixtures::standingState(0.22);
  x0.p = {0.3, -0.1};
  for (double t : {0.0, 0.37, 1.0, 2.5}) {
    PlantState s = walk.setpoint(x0, vec({0.25, 0.2, 0, 0}), 0.0, t);
    EXPECT_DOUBLE_EQ(s.p[0], 0.3 + 0.2 * t);
    EXPECT_DOUBLE_EQ(s.p[1], -0.1);
    EXPECT_EQ(s.h, 0.25);
    EXPECT_EQ(s.v[0], 0.2);
  }
}

TEST(WalkB, GaitIsPeriodic) {
  PlantConfig cfg;
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const double t = rng.uniform(0.0, 20.0);
    EXPECT_EQ(gaitContacts(t, cfg.gaitPeriod, cfg.doubleSupportFraction),
              gaitContacts(t + cfg.gaitPeriod, cfg.gaitPeriod, cfg.doubleSupportFraction));
  }
  EXPECT_EQ(gaitContacts(0.0, 0.5, 0.2), kAllContacts);
  EXPECT_EQ(gaitContacts(0.1, 0.5, 0.2), (Contacts{true, false, false, true}));
  EXPECT_EQ(gaitContacts(0.26, 0.5, 0.2), kAllContacts);
  EXPECT_EQ(gaitContacts(0.4, 0.5, 0.2), (Contacts{false, true, true, false}));
}

TEST(LieB, SplineEndpoints) {
  const auto& lie = registry().at(kLie);
  PlantConfig cfg;
  PlantState x0 = fixtures::restingState();
  x0.h = 0.25;
  x0.theta[2] = 0.4;
  const PlantState start = lie.setpoint(x0, Vector(), 1.0, 1.0);
  EXPECT_EQ(start.h, x0.h);
  EXPECT_EQ(start.theta, x0.theta);

  const double d = std::sqrt(std::pow(0.25 - cfg.lieHeight, 2) + 0.1 * 0.1 + 0.06 * 0.06);
  const double arrival = cfg.splineDuration * std::cbrt(d / cfg.splineReferenceDistance);
  for (double s : {arrival, arrival + 0.5, 10.0}) {
    const PlantState end = lie.setpoint(x0, Vector(), 1.0, 1.0 + s);
    EXPECT_NEAR(end.h, cfg.lieHeight, 1e-12);
    EXPECT_NEAR(end.theta[0], 0.0, 1e-12);
    EXPECT_NEAR(end.theta[1], 0.0, 1e-12);
    EXPECT_EQ(end.theta[2], 0.4);
    EXPECT_NEAR(end.vz, 0.0, 1e-12);
    EXPECT_EQ(end.v[0], 0.0);
  }
}

TEST(LandB, BallisticDescentThenRest) {
  const auto& land = registry().at(kLand);
  PlantState x0 = fixtures::standingState(0.7);
  x0.contacts = kNoContacts;
  x0.v = {0.1, 0.0};
  const PlantState mid = land.setpoint(x0, Vector(), 0, 0.1);
  EXPECT_NEAR(mid.h, 0.7 - 0.5 * 9.81 * 0.01, 1e-12);
  EXPECT_EQ(mid.contacts, kNoContacts);
  const PlantState end = land.setpoint(x0, Vector(), 0, 2.0);
  EXPECT_EQ(end.h, 0.2);
  EXPECT_EQ(end.vz, 0.0);
  EXPECT_EQ(end.contacts, kAllContacts);
  EXPECT_NEAR(end.p[0], 0.1 * std::sqrt(2 * 0.5 / 9.81), 1e-12);
}

TEST(BenchPrimitives, SemigroupProperty) {
  Rng rng(11);
  for (std::size_t k = 0; k < registry().size(); ++k) {
    const auto& spec = registry()[k];
    for (int n = 0; n < 100; ++n) {
      const PlantState x0 = fixtures::sampleState(rng, [](const PlantState&) { return true; });
      const Vector xi = fixtures::sampleArgs(rng, spec.args);
      const double t0 = rng.uniform(0, 1), t1 = rng.uniform(0, 2), t2 = rng.uniform(0, 2);
      const PlantState direct = spec.setpoint(x0, xi, t0, t0 + t1 + t2);
      const PlantState mid = spec.setpoint(x0, xi, t0, t0 + t1);
      const PlantState chained = spec.setpoint(mid, xi, t0 + t1, t0 + t1 + t2);
      EXPECT_LT(maxAbs(direct.coords() - chained.coords()), 1e-9) << spec.id;
      EXPECT_EQ(direct.contacts, chained.contacts) << spec.id;
    }
  }
}

TEST(BenchPrimitives, RoAImpliesSafeSetAndSetpointStaysSafe) {
  Rng rng(13);
  for (std::size_t k = 0; k < registry().size(); ++k) {
    const auto& spec = registry()[k];
    for (int n = 0; n < 100; ++n) {
      const RoADraw d = drawInRoA(spec, rng);
      ASSERT_TRUE(spec.safeSet(d.x0, d.xi, d.t0)) << spec.id;
      for (double s = 0.0; s <= 4.0; s += 0.01) {
        const PlantState ref = spec.setpoint(d.x0, d.xi, d.t0, d.t0 + s);
        ASSERT_TRUE(spec.safeSet(ref, d.xi, d.t0 + s)) << spec.id << " s=" << s;
      }
    }
  }
}

TEST(BenchPrimitives, AnalyticJacobianMatchesFiniteDifferences) {
  Rng rng(17);
  for (std::size_t k = 0; k < registry().size(); ++k) {
    const auto& spec = registry()[k];
    ASSERT_TRUE(spec.hasJacobian());
    for (int n = 0; n < 100; ++n) {
      const RoADraw d = drawInRoA(spec, rng);
      const double t = d.t0 + rng.uniform(0.0, 2.0);
      const Matrix j = spec.setpointJacobian(d.x0, d.xi, d.t0, t);
      const Eigen::Index a = d.xi.size();
      ASSERT_EQ(j.cols(), a + 2);
      const double h = 1e-6;
      auto at = [&](const Vector& xi, double t0, double tt) {
        return spec.setpoint(d.x0, xi, t0, tt).coords();
      };
      Matrix fd(kNumCoords, a + 2);
      for (Eigen::Index c = 0; c < a; ++c) {
        Vector hi = d.xi, lo = d.xi;
        hi[c] += h;
        lo[c] -= h;
        fd.col(c) = (at(hi, d.t0, t) - at(lo, d.t0, t)) / (2 * h);
      }
      fd.col(a) = (at(d.xi, d.t0 + h, t) - at(d.xi, d.t0 - h, t)) / (2 * h);
      fd.col(a + 1) = (at(d.xi, d.t0, t + h) - at(d.xi, d.t0, t - h)) / (2 * h);
      EXPECT_LT(maxAbs(j - fd), 1e-5 * std::max(1.0, maxAbs(j))) << spec.id;
    }
  }
}

TEST(StepPlant, ZeroErrorTracksSetpoint) {
  const auto& walk = registry().at(kWalk);
  PlantState x0 = walk.setpoint(fixtures::standingState(0.25), vec({0.25, 0.2, 0, 0}), 0, 0);
  ActivePrimitive ap{&walk, vec({0.25, 0.2, 0, 0}), x0, 0.0, 0.0};
  PlantState x = x0;
  for (int i = 0; i < 1000; ++i) x = stepPlant(x, &ap, i * 1e-3, 1e-3, {});
  const PlantState ref = ap.setpointAt(1.0);
  EXPECT_LT(maxAbs(x.coords() - ref.coords()), 1e-12);
  EXPECT_EQ(x.contacts, ref.contacts);
}

TEST(StepPlant, ErrorDecaysExactly) {
  PlantConfig cfg;
  cfg.stand.rate = 2.0;
  const auto reg = buildBenchRegistry(cfg);
  const auto& stand = reg.at(kStand);
  const PlantState anchor = fixtures::standingState(0.25);
  ActivePrimitive ap{&stand, vec({0.25, 0, 0, 0}), anchor, 0.0, 0.0};
  PlantState x = anchor;
  x.p[0] += 0.5;
  x = stepPlant(x, &ap, 0.0, 1.0, {});
  EXPECT_NEAR(x.p[0], 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(x.p[0], 0.06767, 1e-5);
}

TEST(StepPlant, ImpulseJumpsVelocityAfterDecay) {
  const auto& stand = registry().at(kStand);
  const PlantState anchor = fixtures::standingState(0.25);
  ActivePrimitive ap{&stand, vec({0.25, 0, 0, 0}), anchor, 0.0, 0.0};
  Disturbance kick;
  kick.time = 0.0105;
  kick.dV = {1.0, 0.0};
  std::vector<Disturbance> ds{kick};
  const PlantState before = stepPlant(anchor, &ap, 0.0, 0.01, ds);
  EXPECT_EQ(before.v[0], 0.0);
  const PlantState after = stepPlant(before, &ap, 0.01, 0.01, ds);
  EXPECT_EQ(after.v[0], 1.0);
}

TEST(StepPlant, HoldClampsComponentInsideWindow) {
  Disturbance hold;
  hold.kind = DisturbanceKind::kHold;
  hold.time = 0.1;
  hold.window = 0.2;
  hold.component = *holdComponentIndex("c2");
  hold.value = 0.0;
  std::vector<Disturbance> ds{hold};
  const auto& stand = registry().at(kStand);
  const PlantState anchor = fixtures::standingState(0.25);
  ActivePrimitive ap{&stand, vec({0.25, 0, 0, 0}), anchor, 0.0, 0.0};
  EXPECT_TRUE(stepPlant(anchor, &ap, 0.0, 0.05, ds).contacts[2]);
  EXPECT_FALSE(stepPlant(anchor, &ap, 0.1, 0.05, ds).contacts[2]);
  EXPECT_TRUE(stepPlant(anchor, &ap, 0.3, 0.05, ds).contacts[2]);
  EXPECT_EQ(holdComponentName(*holdComponentIndex("vx_mps")), "vx_mps");
  EXPECT_FALSE(holdComponentIndex("bogus"));
}

TEST(StepPlant, ContactEventAndIdlePlant) {
  Disturbance toss;
  toss.kind = DisturbanceKind::kContactEvent;
  toss.time = 0.0;
  toss.contacts = kNoContacts;
  toss.heightOffset = 0.5;
  std::vector<Disturbance> ds{toss};
  const PlantState x0 = fixtures::standingState(0.25);
  const PlantState x1 = stepPlant(x0, nullptr, 0.0, 1e-3, ds);
  EXPECT_EQ(x1.contacts, kNoContacts);
  EXPECT_DOUBLE_EQ(x1.h, 0.75);
  EXPECT_THROW(stepPlant(x0, nullptr, 0.0, 0.0, ds), std::invalid_argument);
}

TEST(StepPlant, EnvelopeAndMinDurationSoundness) {
  Rng rng(19);
  for (std::size_t k = 0; k < registry().size(); ++k) {
    const auto& spec = registry()[k];
    for (int n = 0; n < 100; ++n) {
      const RoADraw d = drawInRoA(spec, rng);
      const double e0 = spec.anchorError(d.x0, d.xi, d.t0);
      const double dtMin = requestMinDuration(spec, d.x0, d.xi, d.t0);
      ActivePrimitive ap{&spec, d.xi, d.x0, d.t0, 0.0};
      PlantState x = d.x0;
      const int steps = 200;
      const double h = std::max(dtMin, 1e-3) / steps;
      for (int i = 0; i < steps; ++i) {
        x = stepPlant(x, &ap, i * h, h, {});
        const double t = (i + 1) * h;
        const double err = spec.norm.distance(x, ap.setpointAt(t));
        ASSERT_LE(err, spec.envelope.overshoot * std::exp(-spec.envelope.rate * t) * e0 + 1e-12);
      }
      EXPECT_LE(spec.norm.distance(x, ap.setpointAt(steps * h)), spec.envelope.epsilon) << spec.id;
    }
  }
}
