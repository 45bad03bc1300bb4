#pragma once

#include <cmath>
#include <complex>

#include "qcond/core.hpp"

namespace qcond::test {

inline bool near(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

inline bool near(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

inline double max_amp_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
  return m;
}

}  // namespace qcond::test
