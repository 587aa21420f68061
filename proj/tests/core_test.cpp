#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "mpg/core/transfer.hpp"
#include "mpg/search/rng.hpp"
#include "test_support.hpp"

using namespace mpg;
using mpg::fixtures::Scalar;
using mpg::fixtures::vec;

namespace {

// Integrates de/dt = -alpha e with RK4 and returns the first time the error
// reaches `threshold`, linearly interpolated inside the crossing step.
double simulatedCrossing(double e0, double alpha, double threshold, double h = 1e-4) {
  double t = 0.0, e = e0;
  while (e > threshold) {
    auto f = [alpha](double x) { return -alpha * x; };
    const double k1 = f(e), k2 = f(e + 0.5 * h * k1), k3 = f(e + 0.5 * h * k2), k4 = f(e + h * k3);
    const double next = e + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (next <= threshold) return t + h * (e - threshold) / (e - next);
    e = next;
    t += h;
  }
  return t;
}

Registry<Scalar> toyRegistry() {
  Registry<Scalar> r;
  r.add(fixtures::makeGoTo("A", -10, 10, 1.0));
  r.add(fixtures::makeGoTo("B", -10, 10, 0.5));
  return r;
}

}  // namespace

TEST(MinDuration, OracleMatchesSimulatedDecay) {
  const double simulated = simulatedCrossing(0.5, 2.0, 0.01 / 1.2);
  EXPECT_NEAR(simulated, 2.0471722811110502, 1e-6);
  EXPECT_NEAR(minDuration({1.2, 2.0, 0.01}, 0.5), 2.0471722811110502, 1e-12);
}

TEST(MinDuration, ZeroErrorAndUnitRatio) {
  EXPECT_EQ(minDuration({3.0, 0.5, 1e-3}, 0.0), 0.0);
  EXPECT_EQ(minDuration({1.0, 1.0, 1.0}, 1.0), 0.0);
  EXPECT_EQ(minDuration({1.0, 1.0, 1.0}, 0.1), 0.0);
}

TEST(MinDuration, MonotoneInEachParameter) {
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const StabilityEnvelope e{rng.uniform(1.0, 3.0), rng.uniform(0.1, 10.0), rng.uniform(1e-4, 1e-1)};
    const double err = rng.uniform(0.0, 2.0);
    const double base = minDuration(e, err);
    const double bump = rng.uniform(0.0, 1.0);
    EXPECT_GE(minDuration(e, err + bump), base);
    EXPECT_GE(minDuration({e.overshoot + bump, e.rate, e.epsilon}, err), base);
    EXPECT_LE(minDuration({e.overshoot, e.rate + bump, e.epsilon}, err), base);
    EXPECT_LE(minDuration({e.overshoot, e.rate, e.epsilon + bump}, err), base);
  }
}

TEST(MinDuration, BoundHoldsWithoutSlack) {
  Rng rng(8);
  for (int k = 0; k < 5000; ++k) {
    const StabilityEnvelope e{rng.uniform(1.0, 3.0), rng.uniform(0.1, 10.0), rng.uniform(1e-4, 1e-1)};
    const double err = rng.uniform(0.0, 2.0);
    const double dt = minDuration(e, err);
    ASSERT_LE(e.overshoot * std::exp(-e.rate * dt) * err, e.epsilon) << k;
    if (dt > 0.0) EXPECT_NEAR(dt, std::log(e.overshoot * err / e.epsilon) / e.rate, 1e-12 * (1 + dt));
  }
}

TEST(ArgumentDomain, ClosedBoxAndEmpty) {
  ArgumentDomain d(vec({0.0, -1.0}), vec({1.0, 1.0}));
  EXPECT_TRUE(d.contains(vec({0.0, 1.0})));
  EXPECT_FALSE(d.contains(vec({1.0000001, 0.0})));
  EXPECT_FALSE(d.contains(vec({0.5})));
  EXPECT_TRUE(ArgumentDomain::empty().contains(Vector()));
  EXPECT_EQ(ArgumentDomain::empty().dimension(), 0);
  EXPECT_THROW(ArgumentDomain(vec({1.0}), vec({0.0})), ConfigInvalid);
}

TEST(StabilityEnvelope, Validation) {
  EXPECT_THROW((StabilityEnvelope{0.9, 1.0, 0.1}.validate()), ConfigInvalid);
  EXPECT_THROW((StabilityEnvelope{1.0, 0.0, 0.1}.validate()), ConfigInvalid);
  EXPECT_THROW((StabilityEnvelope{1.0, 1.0, 0.0}.validate()), ConfigInvalid);
  EXPECT_NO_THROW((StabilityEnvelope{1.0, 1.0, 0.1}.validate()));
}

TEST(Registry, RejectsDuplicatesAndUnknownIds) {
  auto r = toyRegistry();
  EXPECT_THROW(r.add(fixtures::makeGoTo("A", 0, 1, 1)), ConfigInvalid);
  EXPECT_THROW(r.at("Z"), UnknownPrimitive);
  EXPECT_EQ(r.ids(), (std::vector<std::string>{"A", "B"}));
}

TEST(ApplyTransfer, AppliesWithinRoAAndDuration) {
  auto r = toyRegistry();
  const auto& a = r.at("A");
  // err = 0.5 -> dtMin = ln(50) / 2.
  auto res = applyTransfer(a, TransferRequest<Scalar>{{0.0}, "A", vec({0.5}), 0.0, 5.0});
  EXPECT_TRUE(res.applied);
  EXPECT_EQ(res.xOut.x, 0.5);
  EXPECT_NEAR(res.dtMin, std::log(50.0) / 2.0, 1e-12);
}

TEST(ApplyTransfer, RejectionReturnsInputBitExactly) {
  auto r = toyRegistry();
  const Scalar x0{0.1 + 0.2};
  auto outside = applyTransfer(r.at("B"), TransferRequest<Scalar>{x0, "B", vec({3.0}), 0.0, 100.0});
  EXPECT_FALSE(outside.applied);
  EXPECT_EQ(std::memcmp(&outside.xOut.x, &x0.x, sizeof(double)), 0);

  const double dtMin = requestMinDuration(r.at("A"), x0, vec({0.8}), 0.0);
  ASSERT_GT(dtMin, 0.0);
  auto tooShort =
      applyTransfer(r.at("A"), TransferRequest<Scalar>{x0, "A", vec({0.8}), 0.0, dtMin / 2});
  EXPECT_FALSE(tooShort.applied);
  EXPECT_EQ(tooShort.xOut, x0);
}

TEST(ApplyTransfer, ArgumentOutsideDomainThrows) {
  auto r = toyRegistry();
  EXPECT_THROW(applyTransfer(r.at("A"), TransferRequest<Scalar>{{0.0}, "A", vec({11.0}), 0, 1}),
               ArgumentOutOfDomain);
  EXPECT_THROW(applyTransfer(r.at("A"), TransferRequest<Scalar>{{0.0}, "A", vec({1.0, 2.0}), 0, 1}),
               ArgumentOutOfDomain);
}

TEST(ComposeChain, EmptyChainIsFeasible) {
  auto r = toyRegistry();
  auto c = composeChain(r, Scalar{1.0}, {});
  EXPECT_TRUE(c.feasible);
  EXPECT_TRUE(c.states.empty());
}

TEST(ComposeChain, StopsAtFirstFailure) {
  auto r = toyRegistry();
  auto c = composeChain(r, Scalar{0.0},
                        {{"A", vec({0.9}), 0, 10}, {"B", vec({2.0}), 0, 10}, {"A", vec({0}), 0, 10}});
  EXPECT_FALSE(c.feasible);
  ASSERT_EQ(c.states.size(), 1u);
  EXPECT_EQ(c.states[0].x, 0.9);
}

TEST(ComposeChain, UnknownPrimitiveThrowsUpFront) {
  auto r = toyRegistry();
  EXPECT_THROW(composeChain(r, Scalar{0.0}, {{"A", vec({0.5}), 0, 10}, {"Q", vec({0}), 0, 1}}),
               UnknownPrimitive);
}

TEST(ComposeChain, EqualsFoldOfApplyTransfer) {
  auto r = toyRegistry();
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<EdgeParams> edges;
    const int n = 1 + static_cast<int>(rng.index(6));
    for (int k = 0; k < n; ++k) {
      edges.push_back({rng.uniform() < 0.5 ? "A" : "B", vec({rng.uniform(-2, 2)}),
                       rng.uniform(0, 1), rng.uniform(0, 4)});
    }
    const Scalar x0{rng.uniform(-2, 2)};
    auto chain = composeChain(r, x0, edges);
    Scalar x = x0;
    std::vector<Scalar> fold;
    bool ok = true;
    for (const auto& e : edges) {
      auto res = applyTransfer(r, x, e);
      if (!res.applied) {
        ok = false;
        break;
      }
      x = res.xOut;
      fold.push_back(x);
    }
    EXPECT_EQ(chain.feasible, ok);
    EXPECT_EQ(chain.states, fold);
  }
}
