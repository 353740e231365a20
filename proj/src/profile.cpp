#include "gslab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "gslab/errors.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

double tail_value(const TailModel& t, double r) {
  return t.amplitude * std::pow(r, -t.power) * std::exp(-t.rate * r);
}

double tail_deriv(const TailModel& t, double r) {
  return -tail_value(t, r) * (t.power / r + t.rate);
}

double core_value(const CoreModel& c, double r) {
  const double r2 = r * r;
  return c.c0 + r2 * (c.c2 + r2 * c.c4);
}

double core_deriv(const CoreModel& c, double r) {
  const double r2 = r * r;
  return r * (2.0 * c.c2 + 4.0 * r2 * c.c4);
}

namespace {

// Hermite cubic on [ra, rb] from endpoint values/slopes.
inline double hermite(double ra, double rb, double ua, double ub, double va, double vb,
                      double r, bool want_deriv) {
  const double h = rb - ra;
  const double t = (r - ra) / h;
  const double t2 = t * t;
  if (!want_deriv) {
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t2 * (3 - 2 * t);
    const double h11 = t2 * (t - 1);
    return h00 * ua + h10 * h * va + h01 * ub + h11 * h * vb;
  }
  const double d00 = 6 * t * (t - 1) / h;
  const double d10 = (1 - t) * (1 - 3 * t);
  const double d01 = -6 * t * (t - 1) / h;
  const double d11 = t * (3 * t - 2);
  return d00 * ua + d10 * va + d01 * ub + d11 * vb;
}

}  // namespace

double RadialProfile::value(double r) const {
  const auto& x = grid.nodes;
  const int n = size();
  if (r <= x(0)) {
    if (has_core) return core_value(core, r);
    return values(0);
  }
  if (r >= x(n - 1)) {
    if (r == x(n - 1)) return values(n - 1);
    if (has_tail) return tail_value(tail, r);
    return 0.0;
  }
  const double* beg = x.data();
  int i = static_cast<int>(std::upper_bound(beg, beg + n, r) - beg) - 1;
  return hermite(x(i), x(i + 1), values(i), values(i + 1), derivs(i), derivs(i + 1), r, false);
}

double RadialProfile::deriv(double r) const {
  const auto& x = grid.nodes;
  const int n = size();
  if (r <= x(0)) {
    if (has_core) return core_deriv(core, r);
    return derivs(0);
  }
  if (r >= x(n - 1)) {
    if (r == x(n - 1)) return derivs(n - 1);
    if (has_tail) return tail_deriv(tail, r);
    return 0.0;
  }
  const double* beg = x.data();
  int i = static_cast<int>(std::upper_bound(beg, beg + n, r) - beg) - 1;
  return hermite(x(i), x(i + 1), values(i), values(i + 1), derivs(i), derivs(i + 1), r, true);
}

bool RadialProfile::positive_decreasing() const {
  for (int i = 0; i < size(); ++i) {
    if (!(values(i) > 0.0) || !std::isfinite(values(i))) return false;
    if (i > 0 && !(values(i) < values(i - 1))) return false;
  }
  return true;
}

RadialProfile scale_profile(const RadialProfile& u, double factor) {
  RadialProfile s = u;
  s.values *= factor;
  s.derivs *= factor;
  s.tail.amplitude *= factor;
  s.core.c0 *= factor;
  s.core.c2 *= factor;
  s.core.c4 *= factor;
  return s;
}

RadialProfile truncate_profile(const RadialProfile& u, double rmax) {
  const auto& x = u.grid.nodes;
  int n = 0;
  while (n < u.size() && x(n) <= rmax) ++n;
  if (n < 3) throw InvalidParameterError("truncate_profile: too few nodes below rmax");
  if ((n - 1) % 2 != 0) --n;  // keep an even interval count
  RadialProfile t;
  t.grid = make_grid_from_nodes(u.grid.dim, x.head(n));
  t.values = u.values.head(n);
  t.derivs = u.derivs.head(n);
  t.core = u.core;
  t.has_core = u.has_core;
  t.has_tail = false;
  return t;
}

double tail_power_integral(const TailModel& t, double m, int d, double rmax) {
  if (t.amplitude == 0.0) return 0.0;
  const double sd = surface_area(d);
  const double amp = std::pow(t.amplitude, m);
  if (t.rate > 0.0) {
    const TailModel tm = t;
    return sd * integrate_to_infinity(
                    [&](double r) {
                      return std::pow(tail_value(tm, r), m) * std::pow(r, d - 1);
                    },
                    rmax, m * t.rate);
  }
  const double e = (d - 1) - m * t.power;  // integrand ~ r^e
  if (e >= -1.0)
    throw DivergentNormError("algebraic tail r^" + std::to_string(e) +
                             " is not integrable at infinity");
  return sd * amp * std::pow(rmax, e + 1.0) / (-(e + 1.0));
}

double tail_grad_integral(const TailModel& t, int d, double rmax) {
  if (t.amplitude == 0.0) return 0.0;
  const double sd = surface_area(d);
  if (t.rate > 0.0) {
    const TailModel tm = t;
    return sd * integrate_to_infinity(
                    [&](double r) {
                      const double g = tail_deriv(tm, r);
                      return g * g * std::pow(r, d - 1);
                    },
                    rmax, 2.0 * t.rate);
  }
  const double e = (d - 1) - 2.0 * (t.power + 1.0);
  if (e >= -1.0) throw DivergentNormError("algebraic tail gradient is not integrable");
  const double amp = t.amplitude * t.amplitude * t.power * t.power;
  return sd * amp * std::pow(rmax, e + 1.0) / (-(e + 1.0));
}

double core_power_integral(const CoreModel& c, double m, int d, double r0) {
  const double sd = surface_area(d);
  return sd * integrate_adaptive(
                  [&](double r) { return std::pow(std::abs(core_value(c, r)), m) * std::pow(r, d - 1); },
                  0.0, r0);
}

double core_grad_integral(const CoreModel& c, int d, double r0) {
  const double sd = surface_area(d);
  return sd * integrate_adaptive(
                  [&](double r) {
                    const double g = core_deriv(c, r);
                    return g * g * std::pow(r, d - 1);
                  },
                  0.0, r0);
}

}  // namespace gslab
