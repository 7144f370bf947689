#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "eitqhe/model.hpp"

namespace eitqhe::test {

/// Parameters of the reference operating point (p = 0.7).
inline SystemParams paper(double p = 0.7) {
  SystemParams s;
  s.p = p;
  return s;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double gamma31_unit(const SystemParams& s = paper()) {
  return derive_rates(s).gamma31bar;
}

}  // namespace eitqhe::test
