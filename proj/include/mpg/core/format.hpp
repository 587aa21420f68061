#pragma once

#include <cstdio>
#include <string>

#include "mpg/core/types.hpp"

namespace mpg {

inline std::string formatDouble(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

inline std::string joinVector(const Vector& v, char sep = ';', int precision = 17) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += formatDouble(v[i], precision);
  }
  return out;
}

}  // namespace mpg
