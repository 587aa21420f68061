#pragma once

#include "mpg/core/types.hpp"

namespace mpg {

/// (to - from)^T W (to - from) + switchCost, with diagonal W.
class QuadraticEdgeCost {
 public:
  QuadraticEdgeCost() = default;
  QuadraticEdgeCost(Vector weights, double switchCost)
      : weights_(std::move(weights)), switchCost_(switchCost) {
    if ((weights_.array() < 0.0).any() || !(switchCost_ >= 0.0)) {
      throw ConfigInvalid("edge cost weights and switch cost must be non-negative");
    }
  }

  const Vector& weights() const { return weights_; }
  double switchCost() const { return switchCost_; }

  double operator()(const Vector& from, const Vector& to) const {
    check(from, to);
    return (weights_.array() * (to - from).array().square()).sum() + switchCost_;
  }

  template <PlanningState State>
  double operator()(const State& from, const State& to) const {
    return (*this)(StateTraits<State>::coords(from), StateTraits<State>::coords(to));
  }

  Vector gradientFrom(const Vector& from, const Vector& to) const {
    check(from, to);
    return -2.0 * weights_.cwiseProduct(to - from);
  }

  Vector gradientTo(const Vector& from, const Vector& to) const {
    check(from, to);
    return 2.0 * weights_.cwiseProduct(to - from);
  }

 private:
  void check(const Vector& from, const Vector& to) const {
    if (from.size() != to.size() || from.size() != weights_.size()) {
      throw DimensionMismatch("edge cost: state dimensions differ");
    }
  }

  Vector weights_;
  double switchCost_ = 0.0;
};

}  // namespace mpg
