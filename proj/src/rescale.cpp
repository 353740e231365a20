#include "gslab/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gslab/errors.hpp"
#include "gslab/quadrature.hpp"
#include "gslab/talenti.hpp"

namespace gslab {

RescaledState rescale(const ShootingResult& result, const ProblemParams& prm) {
  prm.validate();
  const double m = result.m_star;
  if (!(m > 0.0)) throw InvalidParameterError("rescale: invalid shooting result");
  const double lam = std::pow(m, 2.0 / (prm.d - 2));  // x -> M^{2/(d-2)} x

  RescaledState st;
  st.params = prm;
  st.m_omega = m;
  st.alpha = prm.omega * std::pow(m, -4.0 / (prm.d - 2));
  st.beta = std::pow(m, prm.p - 1.0 - 4.0 / (prm.d - 2));

  const RadialProfile& u = result.profile;
  RadialProfile v;
  v.grid = make_grid_from_nodes(prm.d, u.grid.nodes * lam);
  v.values = u.values / m;
  v.derivs = u.derivs / (m * lam);
  if (u.has_tail) {
    v.tail = TailModel{u.tail.amplitude * std::pow(lam, u.tail.power) / m,
                       u.tail.rate / lam, u.tail.power};
    v.has_tail = true;
  }
  if (u.has_core) {
    const double l2 = lam * lam;
    v.core = CoreModel{u.core.c0 / m, u.core.c2 / (m * l2), u.core.c4 / (m * l2 * l2)};
    v.has_core = true;
  }
  st.profile = std::move(v);
  return st;
}

double rescaled_residual(const RescaledState& st) {
  const RadialProfile& u = st.profile;
  const int d = st.params.d;
  const double p = st.params.p;
  const double qc = st.params.q_crit();
  const int n = u.size();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    scale = std::max(scale, st.alpha * u.values(i) + st.beta * std::pow(u.values(i), p) +
                                std::pow(u.values(i), qc));
  double worst = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    double xs[5], ys[5];
    for (int j = 0; j < 5; ++j) {
      xs[j] = u.grid.nodes(i - 2 + j);
      ys[j] = u.derivs(i - 2 + j);
    }
    const double upp = lagrange_deriv5(xs, ys, 2);
    const double r = u.grid.nodes(i);
    const double val = u.values(i);
    const double resid = upp + (d - 1) / r * u.derivs(i) - st.alpha * val +
                         st.beta * std::pow(val, p) + std::pow(val, qc);
    worst = std::max(worst, std::abs(resid));
  }
  return worst / scale;
}

RadialProfile kelvin(const RadialProfile& u, int d) {
  if (!u.has_tail)
    throw IncompleteProfileError("kelvin: source profile needs a tail model");
  const int n = u.size();
  Eigen::ArrayXd nodes(n), vals(n), ders(n);
  for (int i = 0; i < n; ++i) {
    const double r = u.grid.nodes(n - 1 - i);
    const double rho = 1.0 / r;
    nodes(i) = rho;
    const double pw = std::pow(r, d - 2);
    vals(i) = pw * u.values(n - 1 - i);
    // K'(rho) = -(d-2) r^{d-1} u(r) - r^d u'(r)
    ders(i) = -(d - 2) * pw * r * u.values(n - 1 - i) -
              pw * r * r * u.derivs(n - 1 - i);
  }
  RadialProfile k;
  k.grid = make_grid_from_nodes(d, nodes);
  k.values = std::move(vals);
  k.derivs = std::move(ders);

  // image of the source core: constant-plus-even-power behaviour at infinity
  const double a0 = u.has_core ? u.core.c0 : u.values(0);
  k.tail = TailModel{a0, 0.0, double(d - 2)};
  k.has_tail = true;
  // image of the source tail near the origin
  if (u.tail.rate > 0.0) {
    k.core = CoreModel{0.0, 0.0, 0.0};  // decays faster than any power
    k.has_core = true;
  } else if (std::abs(u.tail.power - (d - 2)) < 1e-12) {
    k.core = CoreModel{u.tail.amplitude, 0.0, 0.0};
    k.has_core = true;
  } else {
    k.has_core = false;
  }
  return k;
}

namespace {

// Shared-grid integral of a pointwise combination of two profiles plus the
// analytic end corrections.
template <typename F>
double pair_integral(const RadialProfile& u, const RadialProfile& v, int d, F integrand,
                     double tail_rate) {
  const double r_lo = std::min(u.grid.r0(), v.grid.r0());
  const double r_hi = std::max(u.grid.rmax(), v.grid.rmax());
  const int n = std::min(20000, std::max(u.size(), v.size()) * 2);
  const RadialGrid g = make_geometric_grid(d, r_lo, r_hi, n);
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) total += g.weights(i) * integrand(g.nodes(i));
  // the end pieces are negligible against the bulk (and the head integrand is
  // pure cancellation noise), so they only need an absolute tolerance
  const double sd = surface_area(d);
  const double floor = 0.25e-12 * std::abs(total) + 1e-300;
  total += sd * integrate_adaptive(
                    [&](double r) { return integrand(r) * std::pow(r, d - 1); }, 0.0, r_lo,
                    1e-12, 32, floor);
  total += sd * integrate_to_infinity(
                    [&](double r) { return integrand(r) * std::pow(r, d - 1); }, r_hi,
                    tail_rate);
  return total;
}

double pair_tail_rate(const RadialProfile& u, const RadialProfile& v, double power) {
  const double ru = u.has_tail ? u.tail.rate : 0.0;
  const double rv = v.has_tail ? v.tail.rate : 0.0;
  if (ru > 0.0 && rv > 0.0) return power * std::min(ru, rv);
  return 0.0;
}

}  // namespace

double h1dot_norm_sq(const RadialProfile& u) {
  return grad_norm_sq(u);
}

double h1dot_distance(const RadialProfile& u, const RadialProfile& v) {
  const int d = u.grid.dim;
  if (v.grid.dim != d) throw InvalidParameterError("h1dot_distance: dimension mismatch");
  const double s = pair_integral(
      u, v, d,
      [&](double r) {
        const double e = u.deriv(r) - v.deriv(r);
        return e * e;
      },
      pair_tail_rate(u, v, 2.0));
  return std::sqrt(std::max(0.0, s));
}

double lq_distance(const RadialProfile& u, const RadialProfile& v, double q) {
  const int d = u.grid.dim;
  if (v.grid.dim != d) throw InvalidParameterError("lq_distance: dimension mismatch");
  const double s = pair_integral(
      u, v, d, [&](double r) { return std::pow(std::abs(u.value(r) - v.value(r)), q); },
      pair_tail_rate(u, v, q));
  return std::pow(s, 1.0 / q);
}

std::map<std::string, double> talenti_distance(const RescaledState& state,
                                               const std::vector<double>& q_list) {
  const int d = state.params.d;
  for (double q : q_list)
    if (!(q > double(d) / (d - 2)))
      throw OutOfRangeError("talenti_distance: L^q comparison requires q > d/(d-2)");
  const RadialProfile w = make_talenti_profile(d);
  std::map<std::string, double> out;
  out["h1dot"] = h1dot_distance(state.profile, w);
  for (double q : q_list) {
    char key[32];
    std::snprintf(key, sizeof key, "L%g", q);
    out[key] = lq_distance(state.profile, w, q);
  }
  return out;
}

}  // namespace gslab
