#include "gslab/quadrature.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <limits>

#include "gslab/errors.hpp"

namespace gslab {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric half listed).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = h * kKronrodNodes[i];
    double v;
    if (i == 7) {
      v = f(c);
    } else {
      v = f(c - x) + f(c + x);
    }
    resk += kKronrodWeights[i] * v;
    // Gauss-7 lives on the odd-indexed Kronrod nodes plus the center.
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * v;
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

// tol halves per split but never below the length-proportional floor, which
// keeps machine-noise panels from recursing to the depth limit.
double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             double floor_per_len, int depth, int max_depth) {
  PanelResult whole = gk15(f, a, b);
  const double lim = std::max(tol, floor_per_len * (b - a));
  if (whole.error <= lim || depth >= max_depth || !(b - a > 0)) return whole.integral;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, floor_per_len, depth + 1, max_depth) +
         adapt(f, c, b, 0.5 * tol, floor_per_len, depth + 1, max_depth);
}

double integrate_adaptive_impl(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, int max_depth, double abs_tol) {
  if (!(b > a)) return 0.0;
  PanelResult first = gk15(f, a, b);
  const double scale = std::abs(first.integral);
  const double tol = std::max(rel_tol * scale, abs_tol);
  const double floor_per_len =
      (std::max(64.0 * DBL_EPSILON * scale, 0.25 * abs_tol) + 1e-300) / (b - a);
  return adapt(f, a, b, tol, floor_per_len, 0, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth, double abs_tol) {
  return integrate_adaptive_impl(f, a, b, rel_tol, max_depth, abs_tol);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double rate,
                             double rel_tol) {
  double total = 0.0;
  double left = a;
  double block = rate > 0.0 ? 8.0 / rate : std::max(a, 1.0);
  double prev_inc = std::numeric_limits<double>::infinity();
  int rising = 0;
  for (int k = 0; k < 400; ++k) {
    const double right = left + block;
    const double inc = integrate_adaptive_impl(f, left, right, rel_tol, 32,
                                               0.25 * rel_tol * std::abs(total));
    total += inc;
    if (std::abs(inc) <= rel_tol * std::abs(total) && k > 0) return total;
    if (std::abs(inc) > std::abs(prev_inc) && k > 2) {
      if (++rising > 6) throw DivergentNormError("semi-infinite integral does not converge");
    } else {
      rising = 0;
    }
    prev_inc = inc;
    left = right;
    if (rate <= 0.0) block *= 2.0;  // algebraic decay: geometric blocks
  }
  throw DivergentNormError("semi-infinite integral: block budget exhausted");
}

double lagrange_deriv5(const double* xs, const double* ys, int c) {
  double total = 0.0;
  for (int j = 0; j < 5; ++j) {
    double dl = 0.0;
    for (int m = 0; m < 5; ++m) {
      if (m == j) continue;
      double term = 1.0 / (xs[j] - xs[m]);
      for (int k = 0; k < 5; ++k) {
        if (k == j || k == m) continue;
        term *= (xs[c] - xs[k]) / (xs[j] - xs[k]);
      }
      dl += term;
    }
    total += ys[j] * dl;
  }
  return total;
}

}  // namespace gslab
