#pragma once

// Test-only closed forms for the bubble moments, independent of the library's
// quadrature path:  ∫_0^inf r^a (1+r^2/c)^{-b} dr = c^{(a+1)/2} B((a+1)/2, b-(a+1)/2) / 2.

#include <cmath>

namespace oracle {

inline double surface(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

inline double bubble_moment(int d, double a, double b) {
  const double c = double(d) * (d - 2);
  const double h = 0.5 * (a + 1.0);
  return 0.5 * std::pow(c, h) * std::beta(h, b - h);
}

// |W|_q^q over R^d (finite iff (d-2) q > d)
inline double bubble_lq(int d, double q) {
  return surface(d) * bubble_moment(d, d - 1.0, 0.5 * (d - 2) * q);
}

// |∇W|^2 = S_d/d^2 ∫ r^{d+1} (1+r^2/c)^{-d} dr
inline double bubble_grad_sq(int d) {
  return surface(d) / (d * double(d)) * bubble_moment(d, d + 1.0, double(d));
}

// ∫ W^q ΛW dx = -(4-(d-2)(q-1))/(2(q+1)) |W|_{q+1}^{q+1}
inline double bubble_pairing(int d, double q) {
  return -(4.0 - (d - 2) * (q - 1.0)) / (2.0 * (q + 1.0)) * bubble_lq(d, q + 1.0);
}

// limit of β/α: 2(p+1)/(4-(d-2)(p-1)) |W|_2^2 / |W|_{p+1}^{p+1}
inline double beta_alpha_limit(int d, double p) {
  return 2.0 * (p + 1.0) / (4.0 - (d - 2) * (p - 1.0)) * bubble_lq(d, 2.0) /
         bubble_lq(d, p + 1.0);
}

}  // namespace oracle
