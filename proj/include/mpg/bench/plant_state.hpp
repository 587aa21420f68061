#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "mpg/core/types.hpp"

namespace mpg::bench {

// Continuous coordinate layout shared by norms, costs and Jacobians.
enum Coord : int { kH = 0, kThx, kThy, kThz, kPx, kPy, kVx, kVy, kVz, kNumCoords };

// Feet: front-left, front-right, rear-left, rear-right.
enum Foot : int { kFL = 0, kFR, kRL, kRR, kNumFeet };

using Contacts = std::array<bool, kNumFeet>;

inline constexpr Contacts kAllContacts{true, true, true, true};
inline constexpr Contacts kNoContacts{false, false, false, false};

/// Reduced-order quadruped state: body height, attitude, planar position and
/// velocity, vertical velocity, foot contacts.
struct PlantState {
  double h = 0.0;                      // m
  std::array<double, 3> theta{};       // rad (roll, pitch, yaw)
  std::array<double, 2> p{};           // m
  std::array<double, 2> v{};           // m/s
  double vz = 0.0;                     // m/s
  Contacts contacts{};

  bool operator==(const PlantState&) const = default;

  Vector coords() const {
    Vector c(kNumCoords);
    c << h, theta[0], theta[1], theta[2], p[0], p[1], v[0], v[1], vz;
    return c;
  }

  void setCoords(const Vector& c) {
    h = c[kH];
    theta = {c[kThx], c[kThy], c[kThz]};
    p = {c[kPx], c[kPy]};
    v = {c[kVx], c[kVy]};
    vz = c[kVz];
  }

  static PlantState fromCoords(const Vector& c, const Contacts& contacts) {
    PlantState s;
    s.setCoords(c);
    s.contacts = contacts;
    return s;
  }

  int contactCount() const {
    int n = 0;
    for (bool c : contacts) n += c ? 1 : 0;
    return n;
  }

  bool finite() const { return coords().allFinite(); }
};

inline std::string contactString(const Contacts& c) {
  std::string s(kNumFeet, '0');
  for (int i = 0; i < kNumFeet; ++i) s[i] = c[i] ? '1' : '0';
  return s;
}

inline constexpr std::array<std::string_view, kNumCoords> kCoordNames{
    "h_m", "thx_rad", "thy_rad", "thz_rad", "px_m", "py_m", "vx_mps", "vy_mps", "vz_mps"};

}  // namespace mpg::bench

namespace mpg {

template <>
struct StateTraits<bench::PlantState> {
  static constexpr std::size_t kDim = bench::kNumCoords;
  static Vector coords(const bench::PlantState& s) { return s.coords(); }
};

}  // namespace mpg
