#include "gslab/functionals.hpp"

#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/quadrature.hpp"
#include "gslab/talenti.hpp"

namespace gslab {

double norm_power(const RadialProfile& u, double m) {
  double total = (u.values.abs().pow(m) * u.grid.weights).sum();
  if (u.has_tail) total += tail_power_integral(u.tail, m, u.grid.dim, u.grid.rmax());
  if (u.has_core) total += core_power_integral(u.core, m, u.grid.dim, u.grid.r0());
  return total;
}

double grad_norm_sq(const RadialProfile& u) {
  double total = (u.derivs.square() * u.grid.weights).sum();
  if (u.has_tail) total += tail_grad_integral(u.tail, u.grid.dim, u.grid.rmax());
  if (u.has_core) total += core_grad_integral(u.core, u.grid.dim, u.grid.r0());
  return total;
}

FunctionalReport functionals(const RadialProfile& u, const ProblemParams& prm) {
  prm.validate();
  if (u.grid.dim != prm.d)
    throw InvalidParameterError("functionals: profile dimension does not match params");
  FunctionalReport r;
  r.grad_sq = grad_norm_sq(u);
  r.mass = norm_power(u, 2.0);
  r.lp1 = norm_power(u, prm.p + 1.0);
  r.l2s = norm_power(u, prm.two_star());
  const double ts = prm.two_star();
  const double p1 = prm.p + 1.0;
  r.action = 0.5 * r.grad_sq + 0.5 * prm.omega * r.mass - r.lp1 / p1 - r.l2s / ts;
  r.nehari = r.grad_sq + prm.omega * r.mass - r.lp1 - r.l2s;
  r.pohozaev = r.grad_sq / ts + 0.5 * prm.omega * r.mass - r.lp1 / p1 - r.l2s / ts;
  r.i_func = 0.5 * (prm.p - 1.0) / p1 * (r.grad_sq + prm.omega * r.mass) +
             prm.gamma() / (2.0 * prm.d * p1) * r.l2s;
  return r;
}

double functional_scale(const FunctionalReport& rep, const ProblemParams& prm) {
  return rep.grad_sq + prm.omega * rep.mass + rep.lp1 + rep.l2s;
}

double nehari_scale(double a, double lp1, double l2s, double p, double two_star) {
  if (!(a > 0.0) || (lp1 <= 0.0 && l2s <= 0.0))
    throw InvalidParameterError("nehari_scale: profile must be nonzero");
  // Root of h(λ) = a - λ^{p-1} lp1 - λ^{2*-2} l2s, strictly decreasing.
  auto h = [&](double lam) {
    return a - std::pow(lam, p - 1.0) * lp1 - std::pow(lam, two_star - 2.0) * l2s;
  };
  double lo = 1.0, hi = 1.0;
  while (h(lo) <= 0.0) lo *= 0.5;
  while (h(hi) >= 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double nehari_scale(const RadialProfile& u, const ProblemParams& prm) {
  const FunctionalReport r = functionals(u, prm);
  const double a = r.grad_sq + prm.omega * r.mass;
  return nehari_scale(a, r.lp1, r.l2s, prm.p, prm.two_star());
}

IdentityPair scaling_identity_check(int d, double q) {
  if (d < 3) throw InvalidDimensionError("scaling_identity_check: d >= 3 required");
  if (!(q >= 1.0) || !(q <= double(d + 2) / (d - 2)))
    throw OutOfRangeError("scaling_identity_check: need 1 <= q <= (d+2)/(d-2)");
  // W^q ΛW and W^{q+1} both decay like r^{-(d-2)(q+1)}.
  if (!((d - 2) * (q + 1.0) > double(d)))
    throw DivergentNormError("scaling_identity_check: W^{q+1} is not integrable for this (d,q)");

  const RadialProfile w = make_talenti_profile(d);
  const RadialProfile lw = make_lambda_talenti_profile(d);

  IdentityPair out;
  out.lhs = (w.values.pow(q) * lw.values * w.grid.weights).sum();
  // Closed-form tails of the two factors share the same power law.
  const double rmax = w.grid.rmax();
  const double amp = std::pow(w.tail.amplitude, q) * lw.tail.amplitude;
  const double e = (d - 1) - (q + 1.0) * (d - 2);
  out.lhs += surface_area(d) * amp * std::pow(rmax, e + 1.0) / (-(e + 1.0));
  out.lhs += surface_area(d) *
             integrate_adaptive(
                 [&](double r) {
                   return std::pow(talenti(d, r), q) * lambda_talenti(d, r) * std::pow(r, d - 1);
                 },
                 0.0, w.grid.r0());

  const double coeff = (4.0 - (d - 2) * (q - 1.0)) / (2.0 * (q + 1.0));
  out.rhs = -coeff * norm_power(w, q + 1.0);
  return out;
}

}  // namespace gslab
