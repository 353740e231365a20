#pragma once

#include "gslab/profile.hpp"

namespace gslab {

// The explicit radial solution of -ΔW = W^{(d+2)/(d-2)} with W(0) = 1:
// W(r) = (1 + r^2/(d(d-2)))^{-(d-2)/2}.
double talenti(int d, double r);
double talenti_deriv(int d, double r);
double talenti_second_deriv(int d, double r);

// Generator of the critical scaling acting on W:
// ΛW(r) = (d-2)/2 W(r) + r W'(r); vanishes exactly at r = sqrt(d(d-2)).
double lambda_talenti(int d, double r);
double lambda_talenti_deriv(int d, double r);

// W sampled on a geometric grid with exact derivative samples and exact
// leading-order core/tail closures.
RadialProfile make_talenti_profile(int d, double r0 = 5e-5, double rmax = 5e3, int n = 0);

// ΛW sampled the same way (tail ~ -(d-2)/2 * c^{(d-2)/2} r^{-(d-2)}).
RadialProfile make_lambda_talenti_profile(int d, double r0 = 5e-5, double rmax = 5e3, int n = 0);

}  // namespace gslab
