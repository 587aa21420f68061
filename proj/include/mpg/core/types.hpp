#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>

#include "mpg/core/errors.hpp"

namespace mpg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Specialize for every plant state type. Required members:
//   static constexpr std::size_t kDim;     // number of continuous coordinates
//   static Vector coords(const State&);    // continuous coordinates, length kDim
// Discrete parts of a state (contact flags and the like) are compared through
// operator== only; they never enter norms or gradients.
template <typename State>
struct StateTraits;

template <typename S>
concept PlanningState = std::equality_comparable<S> && std::copyable<S> &&
    requires(const S& s) {
      { StateTraits<S>::kDim } -> std::convertible_to<std::size_t>;
      { StateTraits<S>::coords(s) } -> std::convertible_to<Vector>;
    };

/// Closed box of continuous primitive arguments. Dimension 0 is the empty
/// argument set.
class ArgumentDomain {
 public:
  ArgumentDomain() = default;

  ArgumentDomain(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
      throw DimensionMismatch("argument bounds differ in dimension");
    }
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
      if (!(lower_[i] <= upper_[i])) {
        throw ConfigInvalid("argument lower bound exceeds upper bound at index " +
                            std::to_string(i));
      }
    }
  }

  static ArgumentDomain empty() { return {}; }

  Eigen::Index dimension() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector width() const { return upper_ - lower_; }

  bool contains(const Vector& xi) const {
    if (xi.size() != lower_.size()) return false;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      if (!(xi[i] >= lower_[i] && xi[i] <= upper_[i])) return false;
    }
    return true;
  }

  Vector clamp(const Vector& xi) const { return xi.cwiseMax(lower_).cwiseMin(upper_); }

 private:
  Vector lower_;
  Vector upper_;
};

/// Exponential stability constants: ||e(t)|| <= M exp(-alpha t) ||e(0)||, plus
/// the tolerance below which a tracking error counts as negligible.
struct StabilityEnvelope {
  double overshoot = 1.0;  // M >= 1
  double rate = 1.0;       // alpha > 0, 1/s
  double epsilon = 1e-2;   // > 0, state-norm units

  void validate() const {
    if (!(overshoot >= 1.0) || !(rate > 0.0) || !(epsilon > 0.0) || !std::isfinite(overshoot) ||
        !std::isfinite(rate) || !std::isfinite(epsilon)) {
      throw ConfigInvalid("stability envelope requires M >= 1, alpha > 0, epsilon > 0");
    }
  }
};

/// sqrt(sum_i w_i d_i^2) over the continuous coordinates.
class WeightedNorm {
 public:
  WeightedNorm() = default;
  explicit WeightedNorm(Vector weights) : weights_(std::move(weights)) {
    if ((weights_.array() < 0.0).any()) throw ConfigInvalid("norm weights must be non-negative");
  }

  static WeightedNorm unit(Eigen::Index dim) { return WeightedNorm(Vector::Ones(dim)); }

  const Vector& weights() const { return weights_; }

  double operator()(const Vector& d) const {
    if (d.size() != weights_.size()) throw DimensionMismatch("norm weights vs vector");
    return std::sqrt((weights_.array() * d.array().square()).sum());
  }

  template <PlanningState State>
  double distance(const State& a, const State& b) const {
    return (*this)(StateTraits<State>::coords(a) - StateTraits<State>::coords(b));
  }

 private:
  Vector weights_;
};

}  // namespace mpg
