#include "gslab/pucci_serrin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "gslab/errors.hpp"

namespace gslab {

const char* to_string(PsVerdict v) {
  switch (v) {
    case PsVerdict::holds: return "holds";
    case PsVerdict::fails: return "fails";
    default: return "inconclusive";
  }
}

PsCoefficients ps_coefficients(int d, const Rational& p) {
  if (d < 3) throw InvalidDimensionError("ps_coefficients: d >= 3 required");
  if (!(p > Rational(1))) throw InvalidParameterError("ps_coefficients: p > 1 required");
  const Rational q(d + 2, d - 2);
  const Rational one(1), two(2);
  PsCoefficients c;
  c.exact = true;
  c.r_p = p;
  c.r_q = q;
  c.r_a2 = (q - one) / two;
  c.r_ap1 = ((p * p - Rational(3) * p - two) * q + p * p + p + two) / (two * (p + one));
  c.r_aq1 = (q - one) * (q - two) / two;
  c.r_a2p = (q - p) / (p + one);
  c.r_apq = (q - p) * (p + one - q) / (p + one);
  c.a2 = c.r_a2.to_double();
  c.ap1 = c.r_ap1.to_double();
  c.aq1 = c.r_aq1.to_double();
  c.a2p = c.r_a2p.to_double();
  c.apq = c.r_apq.to_double();
  return c;
}

PsCoefficients ps_coefficients(int d, double p) {
  if (auto r = Rational::from_double(p)) return ps_coefficients(d, *r);
  if (d < 3) throw InvalidDimensionError("ps_coefficients: d >= 3 required");
  if (!(p > 1.0)) throw InvalidParameterError("ps_coefficients: p > 1 required");
  const double q = double(d + 2) / (d - 2);
  PsCoefficients c;
  c.exact = false;
  c.a2 = 0.5 * (q - 1.0);
  c.ap1 = ((p * p - 3.0 * p - 2.0) * q + p * p + p + 2.0) / (2.0 * (p + 1.0));
  c.aq1 = 0.5 * (q - 1.0) * (q - 2.0);
  c.a2p = (q - p) / (p + 1.0);
  c.apq = (q - p) * (p + 1.0 - q) / (p + 1.0);
  return c;
}

double g_eval(double u, int d, double p, double omega) {
  const double q = double(d + 2) / (d - 2);
  if (u == 0.0) return 0.0;
  const double up = std::pow(u, p);
  const double uq = std::pow(u, q);
  const double f = -omega * u + up + uq;
  const double fp = -omega + p * up / u + q * uq / u;
  const double F = -0.5 * omega * u * u + up * u / (p + 1.0) + uq * u / (q + 1.0);
  return q * f * f - (q + 1.0) * F * fp;
}

double g_eval_expansion(double u, int d, double p, double omega) {
  const PsCoefficients c = ps_coefficients(d, p);
  const double q = double(d + 2) / (d - 2);
  return c.a2 * omega * omega * u * u + c.ap1 * omega * std::pow(u, p + 1.0) +
         c.aq1 * omega * std::pow(u, q + 1.0) + c.a2p * std::pow(u, 2.0 * p) +
         c.apq * std::pow(u, p + q);
}

double condition_derivative_form(double u, int d, double p, double omega) {
  const double q = double(d + 2) / (d - 2);
  const double up = std::pow(u, p);
  const double uq = std::pow(u, q);
  const double f = -omega * u + up + uq;
  const double fp = -omega + p * up / u + q * uq / u;
  const double F = -0.5 * omega * u * u + up * u / (p + 1.0) + uq * u / (q + 1.0);
  return 1.0 - F * fp / (f * f) - 0.5 * (d - 2) / d;
}

namespace {

// Rudimentary directed-rounding interval; widened by a few ulps per pow to
// absorb libm inaccuracy.
struct Ival {
  double lo, hi;
};

double down(double x) { return std::nextafter(std::nextafter(x, -1e308), -1e308); }
double up(double x) { return std::nextafter(std::nextafter(x, 1e308), 1e308); }

Ival iadd(Ival a, Ival b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

Ival imul_scalar(double c, Ival a) {
  if (c >= 0.0) return {down(c * a.lo), up(c * a.hi)};
  return {down(c * a.hi), up(c * a.lo)};
}

// u^e for 0 < ulo <= uhi, e > 0 fixed
Ival ipow(Ival u, double e) {
  const double lo = std::pow(u.lo, e);
  const double hi = std::pow(u.hi, e);
  return {down(down(lo)), up(up(hi))};
}

Ival g_interval(Ival u, int d, double p, double omega, const PsCoefficients& c) {
  const double q = double(d + 2) / (d - 2);
  Ival acc = imul_scalar(c.a2 * omega * omega, ipow(u, 2.0));
  acc = iadd(acc, imul_scalar(c.ap1 * omega, ipow(u, p + 1.0)));
  acc = iadd(acc, imul_scalar(c.aq1 * omega, ipow(u, q + 1.0)));
  acc = iadd(acc, imul_scalar(c.a2p, ipow(u, 2.0 * p)));
  acc = iadd(acc, imul_scalar(c.apq, ipow(u, p + q)));
  return acc;
}

double term_scale(double u, int d, double p, double omega, const PsCoefficients& c) {
  const double q = double(d + 2) / (d - 2);
  return std::abs(c.a2) * omega * omega * u * u +
         std::abs(c.ap1) * omega * std::pow(u, p + 1.0) +
         std::abs(c.aq1) * omega * std::pow(u, q + 1.0) +
         std::abs(c.a2p) * std::pow(u, 2.0 * p) + std::abs(c.apq) * std::pow(u, p + q);
}

}  // namespace

PucciSerrinReport check_condition(int d, double p, double omega, double u_max,
                                  int points_per_decade) {
  if (!(omega > 0.0)) throw InvalidParameterError("check_condition: omega > 0 required");
  PucciSerrinReport rep;
  rep.coeffs = ps_coefficients(d, p);
  const PsCoefficients& c = rep.coeffs;

  // exact certificates, frequency-uniform
  if (c.exact) {
    const Rational zero(0);
    const bool nn = c.r_a2 >= zero && c.r_ap1 >= zero && c.r_aq1 >= zero &&
                    c.r_a2p >= zero && c.r_apq >= zero;
    if (nn) {
      rep.verdict = PsVerdict::holds;
      rep.certificate = "exact: all expansion coefficients nonnegative";
    } else if (c.r_aq1 >= zero && c.r_apq >= zero && c.r_a2.sign() > 0 &&
               c.r_a2p.sign() > 0 && c.r_ap1 < zero) {
      const Rational disc = c.r_ap1 * c.r_ap1 - Rational(4) * c.r_a2 * c.r_a2p;
      if (disc <= zero) {
        rep.verdict = PsVerdict::holds;
        rep.certificate = "exact: quadratic form A2 + A_{p+1} r + A_{2p} r^2 has discriminant " +
                          disc.str() + " <= 0";
      }
    }
  }

  // scan for the reported minimum (and for witnesses when no certificate)
  if (u_max <= 0.0) u_max = 1000.0 * std::pow(std::max(omega, 1.0), 1.0 / (p - 1.0));
  // a negative leading coefficient drives g to -inf; push the range out there
  if (c.a2p < 0.0 || c.apq < 0.0)
    for (int i = 0; i < 80 && g_eval(u_max, d, p, omega) >= 0.0; ++i) u_max *= 4.0;

  const double u_min = u_max * 1e-14;
  const int decades = static_cast<int>(std::ceil(std::log10(u_max / u_min)));
  const long total = static_cast<long>(decades) * points_per_decade;
  const double lstep = std::log(u_max / u_min) / total;
  const double qq = double(d + 2) / (d - 2);

  double best = std::numeric_limits<double>::infinity();
  double best_u = 0.0;
  for (long i = 0; i <= total; ++i) {
    const double u = u_min * std::exp(lstep * i);
    const double scale = term_scale(u, d, p, omega, c);
    if (scale <= 0.0) continue;
    const double g = c.a2 * omega * omega * u * u + c.ap1 * omega * std::pow(u, p + 1.0) +
                     c.aq1 * omega * std::pow(u, qq + 1.0) + c.a2p * std::pow(u, 2.0 * p) +
                     c.apq * std::pow(u, p + qq);
    const double gn = g / scale;
    if (gn < best) {
      best = gn;
      best_u = u;
    }
  }
  rep.g_min = best;
  rep.g_min_at = best_u;

  if (rep.verdict == PsVerdict::holds) return rep;  // exact certificate already decided

  if (best < -1e-12) {
    // confirm the witness with an interval upper bound
    Ival box{down(best_u), up(best_u)};
    const Ival gv = g_interval(box, d, p, omega, c);
    if (gv.hi < 0.0) {
      rep.verdict = PsVerdict::fails;
      rep.witness_u = best_u;
      rep.witness_g = g_eval(best_u, d, p, omega);
      rep.certificate = "scan: interval-confirmed negative value";
      return rep;
    }
    rep.verdict = PsVerdict::inconclusive;
    rep.hint = "scan found a negative value but the interval check straddles zero; refine";
    return rep;
  }

  // no exact certificate: confirm the scanned minimum neighborhoods with
  // interval evaluations before declaring the condition to hold
  const double lo_u = best_u * std::exp(-lstep);
  const double hi_u = best_u * std::exp(lstep);
  bool certified = true;
  const int cells = 256;
  for (int i = 0; i < cells && certified; ++i) {
    const double a = lo_u * std::pow(hi_u / lo_u, double(i) / cells);
    const double b = lo_u * std::pow(hi_u / lo_u, double(i + 1) / cells);
    const Ival gv = g_interval({down(a), up(b)}, d, p, omega, c);
    const double scale = term_scale(b, d, p, omega, c);
    if (gv.lo < -1e-12 * scale) certified = false;
  }
  if (certified) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "grid scan: %d pts/decade over [%.3g, %.3g], minima interval-confirmed",
                  points_per_decade, u_min, u_max);
    rep.verdict = PsVerdict::holds;
    rep.certificate = buf;
  } else {
    rep.verdict = PsVerdict::inconclusive;
    rep.hint = "minimum within interval-arithmetic noise of zero; increase points_per_decade";
  }
  return rep;
}

ConditionWitness condition_failure_witness(int d, double p) {
  if (d < 7) throw InvalidParameterError("condition_failure_witness: d >= 7 required");
  if (!(p > 1.0)) throw InvalidParameterError("condition_failure_witness: p > 1 required");
  const double q = double(d + 2) / (d - 2);
  // between the homogeneity exponents when p is subcritical; beyond both when
  // the (negative) top coefficient dominates instead
  const double a = p < q ? 0.5 * (1.0 / (q - 1.0) + 1.0 / (p - 1.0)) : 2.0 / (p - 1.0);
  for (double omega = 1.0; omega <= 1e16; omega *= 2.0) {
    const double u = std::pow(omega, a);
    const double g = g_eval(u, d, p, omega);
    if (g < 0.0) return {omega, u, g};
  }
  throw WitnessNotFoundError("condition_failure_witness: no witness below omega = 1e16");
}

Rational d6_margin(const Rational& p) {
  const Rational one(1), two(2), three(3), eight(8);
  const Rational t = three * p + one;
  return eight * (p + one) - (two - p) * t * t;
}

Rational d6_margin_deriv(const Rational& p) {
  return Rational(27) * p * p - Rational(24) * p - Rational(3);
}

int d5_ap1_sign(const Rational& p) {
  const Rational v = Rational(5) * p * p - Rational(9) * p - Rational(4);
  return v.sign();
}

}  // namespace gslab
