#pragma once

#include <optional>
#include <string>

#include "gslab/rational.hpp"

namespace gslab {

// Coefficients of the expansion
//   g(u) = A2 ω² u² + A_{p+1} ω u^{p+1} + A_{q+1} ω u^{q+1}
//        + A_{2p} u^{2p} + A_{p+q} u^{p+q},   q = (d+2)/(d-2),
// where g(u) = q f(u)² - (q+1) F(u) f'(u) for f(u) = -ωu + u^p + u^q.
struct PsCoefficients {
  double a2 = 0.0, ap1 = 0.0, aq1 = 0.0, a2p = 0.0, apq = 0.0;
  bool exact = false;  // true when p was recognized as rational
  Rational r_a2, r_ap1, r_aq1, r_a2p, r_apq;
  Rational r_p, r_q;
};

// Exact when p is rational (detected or given); p > 1 required. Powers p at
// or above the critical q arise only in the d >= 7 failure study and are
// accepted there.
PsCoefficients ps_coefficients(int d, double p);
PsCoefficients ps_coefficients(int d, const Rational& p);

// Direct form q f² - (q+1) F f' (cross-checked against the A-expansion).
double g_eval(double u, int d, double p, double omega);
double g_eval_expansion(double u, int d, double p, double omega);

// d/du[F/f] - (d-2)/(2d); same sign as g wherever f(u) != 0.
double condition_derivative_form(double u, int d, double p, double omega);

enum class PsVerdict { holds, fails, inconclusive };
const char* to_string(PsVerdict v);

struct PucciSerrinReport {
  PsCoefficients coeffs;
  PsVerdict verdict = PsVerdict::inconclusive;
  double g_min = 0.0;     // normalized by the local term scale
  double g_min_at = 0.0;  // location of the scanned minimum
  std::string certificate;
  std::optional<double> witness_u;  // explicit u >= 0 with g(u) < 0
  std::optional<double> witness_g;
  std::string hint;  // refinement advice when inconclusive
};

// Verdict on  g >= 0 for all u >= 0  at the given frequency. "holds" comes
// from an exact certificate (nonnegative coefficients, or the quadratic-form
// discriminant for 2 <= q <= 3) or from a scan whose near-zero minima pass an
// interval confirmation; "fails" always carries a witness.
PucciSerrinReport check_condition(int d, double p, double omega, double u_max = 0.0,
                                  int points_per_decade = 10000);

struct ConditionWitness {
  double omega = 0.0;
  double u = 0.0;
  double g = 0.0;
};

// Doubling search for the large-frequency failure in d >= 7: evaluates g at
// u = ω^a with a between the two homogeneity exponents.
ConditionWitness condition_failure_witness(int d, double p);

// Case-analysis helpers (exact):
// d = 6 margin h(p) = 8(p+1) - (2-p)(3p+1)² and h'(p) = 27p² - 24p - 3.
Rational d6_margin(const Rational& p);
Rational d6_margin_deriv(const Rational& p);
// d = 5: sign of 5p² - 9p - 4 (negative exactly between the roots (9±√161)/10).
int d5_ap1_sign(const Rational& p);

}  // namespace gslab
