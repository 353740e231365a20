#pragma once

#include "gslab/params.hpp"
#include "gslab/profile.hpp"

namespace gslab {

// The action, its natural constraints, and the plain norms entering them.
// action   S = 1/2 |∇u|² + ω/2 |u|² - 1/(p+1) |u|_{p+1}^{p+1} - 1/2* |u|_{2*}^{2*}
// nehari   N = |∇u|² + ω |u|² - |u|_{p+1}^{p+1} - |u|_{2*}^{2*}
// pohozaev P = 1/2* |∇u|² + ω/2 |u|² - 1/(p+1) |u|_{p+1}^{p+1} - 1/2* |u|_{2*}^{2*}
// i_func   I = S - N/(p+1), assembled from its manifestly nonnegative form
struct FunctionalReport {
  double action = 0.0;
  double nehari = 0.0;
  double pohozaev = 0.0;
  double i_func = 0.0;
  double grad_sq = 0.0;
  double mass = 0.0;
  double lp1 = 0.0;
  double l2s = 0.0;
};

// ∫ |u|^m dx against the grid weights plus core/tail closures. Throws
// DivergentNormError when the algebraic tail makes the norm infinite.
double norm_power(const RadialProfile& u, double m);
// ∫ |u'|² dx likewise.
double grad_norm_sq(const RadialProfile& u);

FunctionalReport functionals(const RadialProfile& u, const ProblemParams& prm);

// Scale of the positive parts, used to make "N = 0" relative.
double functional_scale(const FunctionalReport& rep, const ProblemParams& prm);

// The unique λ > 0 with N(λu) = 0 for u ≠ 0, together with the sign pattern
// N(λ'u) > 0 for λ' < λ and < 0 for λ' > λ.
double nehari_scale(const RadialProfile& u, const ProblemParams& prm);
double nehari_scale(double grad_plus_mass, double lp1, double l2s, double p, double two_star);

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Both sides of  ∫ W^q ΛW dx = -(4-(d-2)(q-1))/(2(q+1)) |W|_{q+1}^{q+1},
// each computed by quadrature with tail closures. Requires (d-2)(q+1) > d
// for integrability.
IdentityPair scaling_identity_check(int d, double q);

}  // namespace gslab
