#pragma once

#include <cmath>
#include <string>

#include "gslab/errors.hpp"

namespace gslab {

// Problem data for  -Δu + ω u = u^p + u^{(d+2)/(d-2)}  on R^d, radial class.
// Valid range: d >= 3, 1 < p < (d+2)/(d-2), ω > 0.
struct ProblemParams {
  int d = 5;
  double p = 2.0;
  double omega = 1.0;

  ProblemParams() = default;
  ProblemParams(int d_, double p_, double omega_) : d(d_), p(p_), omega(omega_) {
    validate();
  }

  // (d+2)/(d-2), the critical power
  double q_crit() const { return double(d + 2) / double(d - 2); }
  // 2d/(d-2), the critical Sobolev exponent
  double two_star() const { return 2.0 * d / double(d - 2); }
  // 4 - (d-2)(p-1), positive on the whole subcritical range
  double gamma() const { return 4.0 - (d - 2) * (p - 1.0); }

  void validate() const {
    if (d < 3) throw InvalidDimensionError("dimension must satisfy d >= 3, got d=" + std::to_string(d));
    if (!(p > 1.0) || !(p < q_crit()))
      throw InvalidParameterError("power must satisfy 1 < p < (d+2)/(d-2), got p=" + std::to_string(p));
    if (!(omega > 0.0) || !std::isfinite(omega))
      throw InvalidParameterError("frequency must be positive, got omega=" + std::to_string(omega));
    if (!(gamma() > 0.0))
      throw InvalidParameterError("derived exponent 4-(d-2)(p-1) must be positive");
  }

  // Hypothesis under which a ground state is known to exist: either d = 3 with
  // 3 < p < 5, or d >= 4 with the full subcritical range.
  bool ground_state_regime() const {
    if (d == 3) return p > 3.0 && p < 5.0;
    return true;
  }
};

}  // namespace gslab
