#include "gslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "gslab/errors.hpp"
#include "gslab/quadrature.hpp"
#include "gslab/talenti.hpp"

namespace gslab {

namespace {

Eigen::ArrayXd make_operator_nodes(const OperatorSpec& s) {
  std::vector<double> nodes;
  double r = 0.5 * s.h_core;
  while (r < std::min(s.r_switch, s.rmax)) {
    nodes.push_back(r);
    r += s.h_core;
  }
  while (r < s.rmax / (1.0 + 0.5 * s.alpha)) {
    nodes.push_back(r);
    r *= 1.0 + s.alpha;
  }
  if (nodes.size() < 16) throw InvalidParameterError("operator mesh too coarse");
  return Eigen::Map<Eigen::ArrayXd>(nodes.data(), nodes.size());
}

// Solve (T - shift I) x = b for symmetric tridiagonal T, LU with partial
// pivoting (two superdiagonals fill in).
void solve_shifted_tridiag(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                           double shift, Eigen::VectorXd& x) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd d(n), u1(n), u2(n);
  for (int i = 0; i < n; ++i) d(i) = diag(i) - shift;
  for (int i = 0; i + 1 < n; ++i) u1(i) = off(i);
  u1(n - 1) = 0.0;
  u2.setZero();
  // forward elimination on [l d u1 u2]
  for (int i = 0; i + 1 < n; ++i) {
    double sub = off(i);  // row i+1 entry below the pivot
    if (std::abs(sub) > std::abs(d(i))) {
      std::swap(d(i), sub);
      double t = u1(i);
      u1(i) = d(i + 1);
      d(i + 1) = t;
      t = u2(i);
      u2(i) = (i + 2 < n) ? u1(i + 1) : 0.0;
      if (i + 2 < n) u1(i + 1) = t;
      std::swap(x(i), x(i + 1));
    }
    if (d(i) == 0.0) d(i) = 1e-300;
    const double m = sub / d(i);
    d(i + 1) -= m * u1(i);
    if (i + 2 < n) u1(i + 1) -= m * u2(i);
    x(i + 1) -= m * x(i);
  }
  if (d(n - 1) == 0.0) d(n - 1) = 1e-300;
  // back substitution
  x(n - 1) /= d(n - 1);
  if (n >= 2) x(n - 2) = (x(n - 2) - u1(n - 2) * x(n - 1)) / d(n - 2);
  for (int i = n - 3; i >= 0; --i)
    x(i) = (x(i) - u1(i) * x(i + 1) - u2(i) * x(i + 2)) / d(i);
}

EigenPair inverse_iterate(const RadialOperator& op, double shift, Eigen::VectorXd x) {
  const int n = op.size();
  x.normalize();
  double lambda = shift;
  for (int it = 0; it < 12; ++it) {
    solve_shifted_tridiag(op.diag, op.offdiag, shift, x);
    x.normalize();
    // Rayleigh quotient
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = op.diag(i) * x(i);
      if (i > 0) t += op.offdiag(i - 1) * x(i - 1);
      if (i + 1 < n) t += op.offdiag(i) * x(i + 1);
      num += x(i) * t;
    }
    lambda = num;
  }
  Eigen::VectorXd res(n);
  for (int i = 0; i < n; ++i) {
    double t = (op.diag(i) - lambda) * x(i);
    if (i > 0) t += op.offdiag(i - 1) * x(i - 1);
    if (i + 1 < n) t += op.offdiag(i) * x(i + 1);
    res(i) = t;
  }
  EigenPair p;
  p.value = lambda;
  p.residual = res.norm();
  p.vector = x.array() / op.weight.sqrt();
  return p;
}

}  // namespace

RadialOperator assemble(const OperatorSpec& spec) {
  if (spec.d < 3) throw InvalidDimensionError("assemble: d >= 3 required");
  RadialOperator op;
  op.d = spec.d;
  op.rmax = spec.rmax;
  op.nodes = make_operator_nodes(spec);
  const int n = op.size();
  op.potential.resize(n);
  for (int i = 0; i < n; ++i) op.potential(i) = spec.potential(op.nodes(i));

  Eigen::ArrayXd faces(n + 1);
  faces(0) = 0.0;
  for (int i = 0; i + 1 < n; ++i) faces(i + 1) = 0.5 * (op.nodes(i) + op.nodes(i + 1));
  faces(n) = 0.5 * (op.nodes(n - 1) + spec.rmax);

  op.weight.resize(n);
  for (int i = 0; i < n; ++i)
    op.weight(i) = (std::pow(faces(i + 1), spec.d) - std::pow(faces(i), spec.d)) / spec.d;

  Eigen::ArrayXd t(n);  // face conductances c/h
  for (int i = 0; i + 1 < n; ++i)
    t(i) = std::pow(faces(i + 1), spec.d - 1) / (op.nodes(i + 1) - op.nodes(i));
  if (spec.bc == OuterBc::dirichlet) {
    // wall beyond the last cell
    t(n - 1) = std::pow(faces(n), spec.d - 1) / (spec.rmax - op.nodes(n - 1));
  } else {
    // outgoing flux of a decaying harmonic, u'(f) = -(d-2) u(f) / f
    const double f = faces(n);
    const double delta = f - op.nodes(n - 1);
    t(n - 1) = std::pow(f, spec.d - 1) * (spec.d - 2) / (f + (spec.d - 2) * delta);
  }

  op.diag.resize(n);
  op.offdiag.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    double s = t(i);
    if (i > 0) s += t(i - 1);
    op.diag(i) = s / op.weight(i) + op.potential(i);
  }
  for (int i = 0; i + 1 < n; ++i)
    op.offdiag(i) = -t(i) / std::sqrt(op.weight(i) * op.weight(i + 1));
  return op;
}

Eigen::ArrayXd RadialOperator::apply(const Eigen::ArrayXd& x) const {
  const int n = size();
  Eigen::ArrayXd sx = x * weight.sqrt();
  Eigen::ArrayXd y(n);
  for (int i = 0; i < n; ++i) {
    double t = diag(i) * sx(i);
    if (i > 0) t += offdiag(i - 1) * sx(i - 1);
    if (i + 1 < n) t += offdiag(i) * sx(i + 1);
    y(i) = t;
  }
  return y / weight.sqrt();
}

OperatorSpec linearize(const RadialProfile& u, const ProblemParams& prm) {
  prm.validate();
  OperatorSpec s;
  s.d = prm.d;
  const RadialProfile prof = u;
  const double p = prm.p, qc = prm.q_crit(), om = prm.omega;
  s.potential = [prof, p, qc, om](double r) {
    const double v = std::max(prof.value(r), 0.0);
    return om - p * std::pow(v, p - 1.0) - qc * std::pow(v, qc - 1.0);
  };
  const double core = u.grid.r0() * 1e2;
  s.h_core = std::max(1e-4, core);
  s.r_switch = 10.0 * s.h_core;
  s.rmax = u.grid.rmax() * 2.0;
  return s;
}

OperatorSpec linearize_rescaled(const RescaledState& st) {
  OperatorSpec s;
  s.d = st.params.d;
  const RadialProfile prof = st.profile;
  const double p = st.params.p, qc = st.params.q_crit();
  const double al = st.alpha, be = st.beta;
  s.potential = [prof, p, qc, al, be](double r) {
    const double v = std::max(prof.value(r), 0.0);
    return al - p * be * std::pow(v, p - 1.0) - qc * std::pow(v, qc - 1.0);
  };
  s.h_core = 2e-3;
  s.r_switch = 2.0;
  // wall where the state has decayed to ~1e-10 of its center value
  const double rate = std::sqrt(std::max(al, 1e-12));
  s.rmax = st.profile.grid.rmax() + 25.0 / rate;
  return s;
}

OperatorSpec critical_linearization(int d, double rmax) {
  if (d < 3) throw InvalidDimensionError("critical_linearization: d >= 3 required");
  OperatorSpec s;
  s.d = d;
  const double qc = double(d + 2) / (d - 2);
  s.potential = [d, qc](double r) { return -qc * std::pow(talenti(d, r), qc - 1.0); };
  s.h_core = 2e-3;
  s.r_switch = 2.0;
  s.rmax = rmax;
  return s;
}

SpectrumReport spectrum_near_zero(const RadialOperator& op, int k) {
  if (k < 3) throw InvalidParameterError("spectrum_near_zero: k >= 3 required");
  const int n = op.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(op.diag, op.offdiag, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw IterationLimitError("spectrum_near_zero: tridiagonal eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return std::abs(ev(a)) < std::abs(ev(b)); });

  SpectrumReport rep;
  rep.gap = std::abs(ev(idx[0]));
  rep.truncation_radius = op.rmax;
  rep.refinement_delta = std::numeric_limits<double>::quiet_NaN();
  const double tnorm = op.diag.cwiseAbs().maxCoeff();
  for (int j = 0; j < std::min(k, n); ++j) {
    const double lam = ev(idx[j]);
    // a slightly off-shift keeps the factorization well defined
    Eigen::VectorXd seed = Eigen::VectorXd::Ones(n);
    seed(n / 3) += 0.5;
    EigenPair p = inverse_iterate(op, lam + 1e-12 * tnorm, seed);
    if (p.residual > 1e-6) {
      // retry from a different seed before giving up
      seed.setLinSpaced(n, 0.3, 1.0);
      p = inverse_iterate(op, lam + 1e-11 * tnorm, seed);
      if (p.residual > 1e-6)
        throw IterationLimitError("spectrum_near_zero: inverse iteration stalled at lambda=" +
                                  std::to_string(lam));
    }
    rep.pairs.push_back(std::move(p));
  }
  return rep;
}

SpectrumReport spectrum_near_zero(const OperatorSpec& spec, int k) {
  SpectrumReport rep = spectrum_near_zero(assemble(spec), k);
  OperatorSpec fine = spec;
  fine.h_core *= 0.5;
  fine.alpha *= 0.5;
  const SpectrumReport rep2 = spectrum_near_zero(assemble(fine), k);
  rep.refinement_delta = std::abs(rep2.gap - rep.gap) / std::max(rep.gap, 1e-300);
  return rep;
}

namespace {

double rayleigh(const RadialOperator& op, const Eigen::VectorXd& x) {
  const int n = op.size();
  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = op.diag(i) * x(i);
    if (i > 0) t += op.offdiag(i - 1) * x(i - 1);
    if (i + 1 < n) t += op.offdiag(i) * x(i + 1);
    num += x(i) * t;
  }
  return num;
}

}  // namespace

EigenPair kernel_candidate(const RadialOperator& op, const RadialProfile& seed) {
  const int n = op.size();
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = seed.value(op.nodes(i)) * std::sqrt(op.weight(i));
  x.normalize();
  // Rayleigh-quotient iteration keeps the solve locked onto the mode the
  // seed points at instead of drifting to the globally smallest |λ|.
  double shift = rayleigh(op, x);
  for (int it = 0; it < 6; ++it) {
    solve_shifted_tridiag(op.diag, op.offdiag, shift, x);
    x.normalize();
    shift = rayleigh(op, x);
  }
  Eigen::VectorXd res(n);
  for (int i = 0; i < n; ++i) {
    double t = (op.diag(i) - shift) * x(i);
    if (i > 0) t += op.offdiag(i - 1) * x(i - 1);
    if (i + 1 < n) t += op.offdiag(i) * x(i + 1);
    res(i) = t;
  }
  EigenPair p;
  p.value = shift;
  p.residual = res.norm();
  p.vector = x.array() / op.weight.sqrt();
  return p;
}

double kernel_witness_check(const RadialOperator& op, const RadialProfile& candidate) {
  const int n = op.size();
  Eigen::ArrayXd vals(n), ders(n);
  for (int i = 0; i < n; ++i) {
    vals(i) = candidate.value(op.nodes(i));
    ders(i) = candidate.deriv(op.nodes(i));
  }
  double num = 0.0, den = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    double xs[5], ys[5];
    for (int j = 0; j < 5; ++j) {
      xs[j] = op.nodes(i - 2 + j);
      ys[j] = ders(i - 2 + j);
    }
    const double upp = lagrange_deriv5(xs, ys, 2);
    const double r = op.nodes(i);
    const double lu = -(upp + (op.d - 1) / r * ders(i)) + op.potential(i) * vals(i);
    num += op.weight(i) * lu * lu;
    den += op.weight(i) * vals(i) * vals(i);
  }
  if (den == 0.0) throw InvalidParameterError("kernel_witness_check: zero candidate");
  return std::sqrt(num / den);
}

double normalized_mismatch(const RadialOperator& op, const Eigen::ArrayXd& a,
                           const Eigen::ArrayXd& b) {
  const double na = std::sqrt((a.square() * op.weight).sum());
  const double nb = std::sqrt((b.square() * op.weight).sum());
  if (na == 0.0 || nb == 0.0) throw InvalidParameterError("normalized_mismatch: zero vector");
  const double inner = (a * b * op.weight).sum();
  const double sign = inner >= 0.0 ? 1.0 : -1.0;
  return std::sqrt(std::max(0.0, ((a / na - sign * b / nb).square() * op.weight).sum()));
}

}  // namespace gslab
