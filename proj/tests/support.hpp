#pragma once

#include "pbg/classical/classical_fields.hpp"

namespace pbg::test {

// L = 2, K_s = K_i = 5, K_F = K_B = 0.05, all mismatches zero.
inline WaveguideConfig working_point() {
  WaveguideConfig c;
  c.length = 2.0;
  c.linear_signal = 5.0;
  c.linear_idler = 5.0;
  c.nonlinear_forward = 0.05;
  c.nonlinear_backward = 0.05;
  return c;
}

inline ClassicalBoundary working_boundary() { return {0.1, 0.1, 10.0}; }

inline double max_abs_diff(const FieldVector& a, const FieldVector& b) {
  double d = 0;
  for (int k = 0; k < 6; ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace pbg::test
