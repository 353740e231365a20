#include "gslab/talenti.hpp"

#include <cmath>

#include "gslab/errors.hpp"

namespace gslab {

namespace {
inline void check_dim(int d) {
  if (d < 3) throw InvalidDimensionError("Talenti bubble requires d >= 3");
}
inline double csc(int d) { return double(d) * (d - 2); }
}  // namespace

double talenti(int d, double r) {
  check_dim(d);
  return std::pow(1.0 + r * r / csc(d), -0.5 * (d - 2));
}

double talenti_deriv(int d, double r) {
  check_dim(d);
  // W' = -(r/d) (1 + r^2/(d(d-2)))^{-d/2}
  return -(r / d) * std::pow(1.0 + r * r / csc(d), -0.5 * d);
}

double talenti_second_deriv(int d, double r) {
  check_dim(d);
  const double z = 1.0 + r * r / csc(d);
  return -std::pow(z, -0.5 * d) / d + (r * r / csc(d)) * std::pow(z, -0.5 * (d + 2));
}

double lambda_talenti(int d, double r) {
  check_dim(d);
  const double c = csc(d);
  // (d-2)/2 * W * (c - r^2)/(c + r^2)
  return 0.5 * (d - 2) * talenti(d, r) * (c - r * r) / (c + r * r);
}

double lambda_talenti_deriv(int d, double r) {
  check_dim(d);
  return 0.5 * d * talenti_deriv(d, r) + r * talenti_second_deriv(d, r);
}

namespace {

RadialProfile sample_closed_form(int d, double r0, double rmax, int n, bool lam) {
  if (n <= 0) n = auto_node_count(r0, rmax);
  RadialProfile u;
  u.grid = make_geometric_grid(d, r0, rmax, n);
  const int m = u.grid.size();
  u.values.resize(m);
  u.derivs.resize(m);
  for (int i = 0; i < m; ++i) {
    const double r = u.grid.nodes(i);
    u.values(i) = lam ? lambda_talenti(d, r) : talenti(d, r);
    u.derivs(i) = lam ? lambda_talenti_deriv(d, r) : talenti_deriv(d, r);
  }
  const double c = csc(d);
  const double amp = std::pow(c, 0.5 * (d - 2));
  u.tail = TailModel{lam ? -0.5 * (d - 2) * amp : amp, 0.0, double(d - 2)};
  const double m2 = 0.5 * (d - 2);
  if (!lam) {
    // (1+z)^{-m} = 1 - m z + m(m+1)/2 z^2 + ..., z = r^2/c
    u.core = CoreModel{1.0, -m2 / c, m2 * (m2 + 1.0) / (2.0 * c * c)};
  } else {
    // ΛW = m W (1-z)/(1+z) = m (1 - (m+2) z + (2 + 2m + m(m+1)/2) z^2 + ...), z = r^2/c
    u.core = CoreModel{m2, -m2 * (m2 + 2.0) / c,
                       m2 * (2.0 + 2.0 * m2 + 0.5 * m2 * (m2 + 1.0)) / (c * c)};
  }
  u.has_tail = true;
  u.has_core = true;
  return u;
}

}  // namespace

RadialProfile make_talenti_profile(int d, double r0, double rmax, int n) {
  check_dim(d);
  return sample_closed_form(d, r0, rmax, n, false);
}

RadialProfile make_lambda_talenti_profile(int d, double r0, double rmax, int n) {
  check_dim(d);
  return sample_closed_form(d, r0, rmax, n, true);
}

}  // namespace gslab
