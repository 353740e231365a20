#include "gslab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gslab/errors.hpp"
#include "gslab/quadrature.hpp"

namespace gslab {

const char* to_string(ShotOutcome c) {
  switch (c) {
    case ShotOutcome::crossing: return "crossing";
    case ShotOutcome::undershoot: return "undershoot";
    case ShotOutcome::decay: return "decay";
    default: return "inconclusive";
  }
}

namespace {

struct Rhs {
  int d;
  double p, qc, omega;
  bool sub, crit;

  double nonlinear(double u) const {
    const double a = std::abs(u);
    double f = 0.0;
    if (sub) f += std::pow(a, p - 1.0) * u;
    if (crit) f += std::pow(a, qc - 1.0) * u;
    return f;
  }
  double nonlinear_deriv(double u) const {
    const double a = std::abs(u);
    double f = 0.0;
    if (sub) f += p * std::pow(a, p - 1.0);
    if (crit) f += qc * std::pow(a, qc - 1.0);
    return f;
  }
  void operator()(double r, const double y[2], double dy[2]) const {
    dy[0] = y[1];
    dy[1] = omega * y[0] - nonlinear(y[0]) - (d - 1) / r * y[1];
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
// dense-output weights
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

struct Stepper {
  Rhs rhs;
  double rtol, atol;
  double r;
  double y[2];
  double k1[2];  // FSAL

  void init(double r0, double u0, double v0) {
    r = r0;
    y[0] = u0;
    y[1] = v0;
    rhs(r, y, k1);
  }

  // Attempt one step of size h; on acceptance fills dense coefficients and
  // returns true. h is updated with the PI-free classic controller.
  bool step(double& h, DenseStep* dense) {
    double k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], y5[2];
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * A21 * k1[i];
    rhs(r + h / 5, yt, k2);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    rhs(r + 3 * h / 10, yt, k3);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    rhs(r + 4 * h / 5, yt, k4);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    rhs(r + 8 * h / 9, yt, k5);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
    rhs(r + h, yt, k6);
    for (int i = 0; i < 2; ++i)
      y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
    rhs(r + h, y5, k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e =
          h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(0.5 * err);

    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 5.0);
    if (err > 1.0) {
      h *= fac;
      return false;
    }
    if (dense) {
      dense->r = r;
      dense->h = h;
      for (int i = 0; i < 2; ++i) {
        const double ydiff = y5[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        dense->c[0][i] = y[i];
        dense->c[1][i] = ydiff;
        dense->c[2][i] = bspl;
        dense->c[3][i] = ydiff - h * k7[i] - bspl;
        dense->c[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] +
                              D7 * k7[i]);
      }
    }
    r += h;
    y[0] = y5[0];
    y[1] = y5[1];
    k1[0] = k7[0];
    k1[1] = k7[1];
    h *= fac;
    return true;
  }
};

inline double dense_eval(const DenseStep& s, int comp, double r) {
  const double th = (r - s.r) / s.h;
  const double th1 = 1.0 - th;
  return s.c[0][comp] +
         th * (s.c[1][comp] + th1 * (s.c[2][comp] + th * (s.c[3][comp] + th1 * s.c[4][comp])));
}

// Locate theta with f(dense) = 0 by bisection on [r, r+h].
double dense_root(const DenseStep& s, int comp, double target) {
  double lo = s.r, hi = s.r + s.h;
  const double flo = dense_eval(s, comp, lo) - target;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = dense_eval(s, comp, mid) - target;
    if ((fm > 0) == (flo > 0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct SeriesStart {
  double r, u, v;
};

SeriesStart series_start(const Rhs& rhs, double m, double omega) {
  const double r0 = 1e-6 / std::sqrt(1.0 + omega);
  const double f = rhs.omega * m - rhs.nonlinear(m);
  const double fp = rhs.omega - rhs.nonlinear_deriv(m);
  const double a2 = f / (2.0 * rhs.d);
  const double a4 = fp * a2 / (4.0 * rhs.d + 8.0);
  const double r2 = r0 * r0;
  return {r0, m + r2 * (a2 + r2 * a4), r0 * (2.0 * a2 + 4.0 * r2 * a4)};
}

// Asymptotic decaying tail A r^{-(d-1)/2} e^{-kr} P(1/(kr)) of the linearized
// far field (Bessel-K expansion, 4ν² = (d-2)²); valid for kr >~ 30.
struct TailSeries {
  double u, v;
};

TailSeries eval_tail_series(int d, double k, double amp, double r) {
  const double four_nu2 = double(d - 2) * (d - 2);
  const double t = 1.0 / (k * r);
  double c = 1.0, tp = 1.0, poly = 1.0, dpoly = 0.0;
  for (int m = 1; m <= 8; ++m) {
    c *= (four_nu2 - (2 * m - 1) * (2 * m - 1)) / (8.0 * m);
    dpoly += m * c * tp;
    tp *= t;
    poly += c * tp;
  }
  const double s = 0.5 * (d - 1);
  const double base = amp * std::pow(r, -s) * std::exp(-k * r);
  return {base * poly, base * ((-k - s / r) * poly - k * t * t * dpoly)};
}

struct InwardPass {
  std::vector<DenseStep> steps;  // descending r; each spans [r+h, r] with h < 0
  double r_end = 0.0, u_end = 0.0, v_end = 0.0;
};

InwardPass integrate_inward(const Rhs& rhs, const OdeOptions& opts, double r_out, double u0,
                            double v0, double r_target) {
  Stepper st{rhs, opts.rtol, opts.atol, 0, {0, 0}, {0, 0}};
  st.init(r_out, u0, v0);
  const double k = rhs.omega > 0.0 ? std::sqrt(rhs.omega) : 1.0;
  double h = -std::min(0.01 / k, 0.05 * (r_out - r_target));
  InwardPass out;
  while (st.r > r_target) {
    if (st.r + h < r_target) h = r_target - st.r;
    if (!(std::abs(h) > st.r * 1e-15))
      throw StiffnessError("integrate_inward: step underflow at r=" + std::to_string(st.r));
    DenseStep dense;
    if (!st.step(h, &dense)) continue;
    out.steps.push_back(dense);
    if (opts.hmax_rel > 0.0 && -h > opts.hmax_rel * st.r) h = -opts.hmax_rel * st.r;
  }
  out.r_end = st.r;
  out.u_end = st.y[0];
  out.v_end = st.y[1];
  return out;
}

std::pair<double, double> eval_inward(const InwardPass& tin, double r) {
  int lo = 0, hi = static_cast<int>(tin.steps.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (tin.steps[mid].r + tin.steps[mid].h <= r)
      hi = mid;
    else
      lo = mid + 1;
  }
  const DenseStep& s = tin.steps[lo];
  return {dense_eval(s, 0, r), dense_eval(s, 1, r)};
}

}  // namespace

std::pair<double, double> Trajectory::eval(double r) const {
  auto it = std::upper_bound(steps.begin(), steps.end(), r,
                             [](double rv, const DenseStep& s) { return rv < s.r; });
  if (it != steps.begin()) --it;
  const DenseStep& s = *it;
  return {dense_eval(s, 0, r), dense_eval(s, 1, r)};
}

double flow_energy(const ProblemParams& prm, double u, double v) {
  const double a = std::abs(u);
  return 0.5 * v * v - 0.5 * prm.omega * u * u + std::pow(a, prm.p + 1.0) / (prm.p + 1.0) +
         std::pow(a, prm.two_star()) / prm.two_star();
}

std::pair<Trajectory, ShotClass> integrate_shot(const ProblemParams& prm, double height,
                                                const OdeOptions& opts) {
  if (!(height > 0.0)) throw InvalidParameterError("integrate_shot: height must be positive");
  const Rhs rhs{prm.d, prm.p, prm.q_crit(), prm.omega, opts.subcritical_term,
                opts.critical_term};
  const double horizon =
      opts.horizon > 0.0 ? opts.horizon : 50.0 / std::sqrt(std::min(prm.omega, 1.0));
  const double sw = std::sqrt(prm.omega);
  const double attach_u = opts.decay_height * height;

  Trajectory traj;
  Stepper st{rhs, opts.rtol, opts.atol, 0, {0, 0}, {0, 0}};
  const SeriesStart s0 = series_start(rhs, height, prm.omega);
  st.init(s0.r, s0.u, s0.v);

  double h = s0.r * 0.1;
  // persistence window for the failure-to-decay detector
  const double window = sw > 0.0 ? 5.0 / sw : std::numeric_limits<double>::infinity();
  double drift_start = -1.0;
  ShotClass cls;

  while (st.r < horizon) {
    h = std::min(h, horizon - st.r);
    if (opts.hmax_rel > 0.0) h = std::min(h, opts.hmax_rel * std::max(st.r, 10.0 * s0.r));
    if (!(h > st.r * 1e-15))
      throw StiffnessError("integrate_shot: step size underflow at r=" + std::to_string(st.r));
    DenseStep dense;
    const double r_prev = st.r;
    const double v_prev = st.y[1];
    if (!st.step(h, &dense)) continue;

    const double u = st.y[0], v = st.y[1];
    if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 50.0 * height + 1e6) {
      cls = {ShotOutcome::undershoot, st.r};  // numeric divergence after a turn
      break;
    }
    if (opts.record) traj.steps.push_back(dense);

    if (u <= 0.0) {
      cls = {ShotOutcome::crossing, dense_root(dense, 0, 0.0)};
      break;
    }
    if (v >= 0.0 && st.r > 4.0 * s0.r) {
      // u stopped decreasing while still positive
      const double rad = v_prev < 0.0 ? dense_root(dense, 1, 0.0) : r_prev;
      cls = {ShotOutcome::undershoot, rad};
      break;
    }
    // decay only counts on the decaying manifold, where u' ~ -(sqrt(ω)+(d-1)/2r) u;
    // a trajectory diving toward a zero crossing has |u'| >> sqrt(ω) u there
    if (attach_u > 0.0 && u < attach_u && v < 0.0 &&
        v > -(1.5 * sw + (prm.d - 1) / st.r) * u) {
      cls = {ShotOutcome::decay, st.r};
      break;
    }
    // grazing detector: in the far field the true tail has u' ~ -sqrt(ω) u;
    // a persistent positive drift of u' + sqrt(ω) u means decay has failed.
    if (u < 0.1 * height && std::isfinite(window)) {
      if (v + sw * u > 0.0) {
        if (drift_start < 0.0) drift_start = r_prev;
        if (st.r - drift_start > window) {
          cls = {ShotOutcome::undershoot, drift_start};
          break;
        }
      } else {
        drift_start = -1.0;
      }
    }
  }
  traj.r_end = st.r;
  traj.u_end = st.y[0];
  traj.v_end = st.y[1];
  return {std::move(traj), cls};
}

namespace {

ShotClass classify(const ProblemParams& prm, double m, const OdeOptions& base) {
  OdeOptions o = base;
  o.record = false;
  return integrate_shot(prm, m, o).second;
}

}  // namespace

ShootingResult shoot(const ProblemParams& prm, const ShootOptions& opts) {
  prm.validate();
  if (!prm.ground_state_regime())
    throw InvalidParameterError(
        "shoot: ground-state existence requires d = 3 with 3 < p < 5, or d >= 4");

  ShootingResult res;
  OdeOptions scan = opts.ode;
  scan.record = false;
  scan.decay_height = 0.0;  // bisect on undershoot/crossing only

  auto note = [&](double m, ShotClass c) { res.trace.emplace_back(m, c); };

  // bracket by geometric expansion from M = 1
  double m_lo = 0.0, m_hi = 0.0;
  ShotClass c1 = classify(prm, 1.0, scan);
  note(1.0, c1);
  if (c1.outcome == ShotOutcome::decay) {
    m_lo = m_hi = 1.0;
  } else if (c1.outcome == ShotOutcome::undershoot) {
    m_lo = 1.0;
    for (double m = 2.0; m <= 1e9; m *= 2.0) {
      ShotClass c = classify(prm, m, scan);
      note(m, c);
      if (c.outcome == ShotOutcome::crossing) {
        m_hi = m;
        break;
      }
      if (c.outcome == ShotOutcome::undershoot) m_lo = m;
    }
  } else if (c1.outcome == ShotOutcome::crossing) {
    m_hi = 1.0;
    for (double m = 0.5; m >= 1e-3; m *= 0.5) {
      ShotClass c = classify(prm, m, scan);
      note(m, c);
      if (c.outcome == ShotOutcome::undershoot) {
        m_lo = m;
        break;
      }
      if (c.outcome == ShotOutcome::crossing) m_hi = m;
    }
  } else {
    throw NoGroundStateError("shoot: inconclusive shot at M = 1; increase horizon");
  }
  if (m_lo == 0.0 || m_hi == 0.0)
    throw NoGroundStateError("shoot: no undershoot/crossing bracket found in [1e-3, 1e9]");

  // bisection on the classification
  while (m_lo < m_hi && (m_hi - m_lo) > opts.bisect_tol * 0.5 * (m_hi + m_lo)) {
    const double m = 0.5 * (m_lo + m_hi);
    ShotClass c = classify(prm, m, scan);
    note(m, c);
    if (c.outcome == ShotOutcome::crossing)
      m_hi = m;
    else if (c.outcome == ShotOutcome::undershoot)
      m_lo = m;
    else if (c.outcome == ShotOutcome::decay) {
      m_lo = m_hi = m;
    } else {
      throw IterationLimitError("shoot: inconclusive shot during bisection at M=" +
                                std::to_string(m));
    }
  }
  res.m_low = m_lo;
  res.m_high = m_hi;
  res.m_star = 0.5 * (m_lo + m_hi);

  // final outward pass with dense recording, stopping on the decaying
  // manifold at a height where the trajectory is still tight on the solution
  OdeOptions fine = opts.ode;
  fine.record = true;
  fine.hmax_rel = fine.hmax_rel > 0.0 ? fine.hmax_rel : 5e-3;
  fine.decay_height = 1e-2;
  auto [traj, cls] = integrate_shot(prm, res.m_star, fine);
  if (traj.steps.empty()) throw IterationLimitError("shoot: empty final trajectory");

  const double sw = std::sqrt(prm.omega);
  double r_match = -1.0, u_match = 0.0, v_match = 0.0;
  if (cls.outcome == ShotOutcome::decay) {
    r_match = traj.r_end;
    u_match = traj.u_end;
    v_match = traj.v_end;
  } else {
    const double target = fine.decay_height * res.m_star;
    for (const DenseStep& s : traj.steps) {
      const double re = s.r + s.h;
      const double ue = dense_eval(s, 0, re);
      const double ve = dense_eval(s, 1, re);
      if (ue <= target && ve < 0.0 && ve > -(1.5 * sw + (prm.d - 1) / re) * ue) {
        r_match = dense_root(s, 0, target);
        auto [um, vm] = traj.eval(r_match);
        u_match = um;
        v_match = vm;
        break;
      }
    }
    if (r_match < 0.0)
      throw IterationLimitError("shoot: final trajectory never reached the matching height");
  }

  // far-field continuation: shoot the tail amplitude of the decaying branch
  // inward from the asymptotic regime until it matches the outward pass;
  // this extends the profile far below the bisection noise floor
  const Rhs rhs{prm.d, prm.p, prm.q_crit(), prm.omega, fine.subcritical_term,
                fine.critical_term};
  const double r_out = r_match + 30.0 / sw;
  OdeOptions inward = fine;
  inward.hmax_rel = 5e-3;
  double ln_amp = std::log(u_match) + 0.5 * (prm.d - 1) * std::log(r_match) + sw * r_match;
  InwardPass tin;
  double prev_ln = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (int it = 0; it < 16; ++it) {
    const TailSeries ic = eval_tail_series(prm.d, sw, std::exp(ln_amp), r_out);
    tin = integrate_inward(rhs, inward, r_out, ic.u, ic.v, r_match);
    if (!(tin.u_end > 0.0))
      throw IterationLimitError("shoot: inward tail pass lost positivity");
    const double f = std::log(tin.u_end / u_match);
    if (std::abs(f) < 1e-13) break;
    double delta = -f;
    if (have_prev && prev_f != f) delta = -f * (ln_amp - prev_ln) / (f - prev_f);
    prev_ln = ln_amp;
    prev_f = f;
    have_prev = true;
    ln_amp += delta;
  }
  res.tail_match_delta = std::abs(tin.v_end - v_match) / std::abs(v_match);

  // sampling grid: core-resolving start, geometric stretching to r_out
  const double core_scale = std::pow(res.m_star, -2.0 / (prm.d - 2));
  const double r0 = 1e-4 * std::min(1.0, core_scale);
  const int n = auto_node_count(r0, r_out);
  RadialProfile u;
  u.grid = make_geometric_grid(prm.d, r0, r_out, n);
  const int m = u.grid.size();
  u.values.resize(m);
  u.derivs.resize(m);
  for (int i = 0; i < m; ++i) {
    const double r = u.grid.nodes(i);
    auto [uv, vv] = r <= r_match ? traj.eval(r) : eval_inward(tin, r);
    u.values(i) = uv;
    u.derivs(i) = vv;
  }

  const double f0 = prm.omega * res.m_star - rhs.nonlinear(res.m_star);
  const double a2 = f0 / (2.0 * prm.d);
  u.core = CoreModel{res.m_star, a2,
                     (prm.omega - rhs.nonlinear_deriv(res.m_star)) * a2 / (4.0 * prm.d + 8.0)};
  u.has_core = true;
  u.tail = TailModel{std::exp(ln_amp), sw, 0.5 * (prm.d - 1)};
  u.has_tail = true;

  if (!u.positive_decreasing())
    throw IterationLimitError("shoot: sampled profile is not positive decreasing");

  // independent pointwise residual from 5-point differentiation of u'
  double scale = 0.0;
  for (int i = 0; i < m; ++i)
    scale = std::max(scale, prm.omega * u.values(i) + std::abs(rhs.nonlinear(u.values(i))));
  double worst = 0.0;
  for (int i = 2; i + 2 < m; ++i) {
    double xs[5], ys[5];
    for (int j = 0; j < 5; ++j) {
      xs[j] = u.grid.nodes(i - 2 + j);
      ys[j] = u.derivs(i - 2 + j);
    }
    const double upp = lagrange_deriv5(xs, ys, 2);
    const double r = u.grid.nodes(i);
    const double resid = upp + (prm.d - 1) / r * u.derivs(i) - prm.omega * u.values(i) +
                         rhs.nonlinear(u.values(i));
    worst = std::max(worst, std::abs(resid));
  }
  res.ode_residual = worst / scale;
  res.profile = std::move(u);
  res.report = functionals(res.profile, prm);
  return res;
}

CensusResult ground_state_census(const ProblemParams& prm, double m_min, double m_max,
                                 int samples, const OdeOptions& opts) {
  prm.validate();
  if (samples < 100) throw InvalidParameterError("ground_state_census: samples >= 100 required");
  if (!(m_min > 0.0) || !(m_max > m_min))
    throw InvalidParameterError("ground_state_census: need 0 < m_min < m_max");

  CensusResult out;
  out.samples.reserve(samples);
  const double lstep = std::log(m_max / m_min) / (samples - 1);
  OdeOptions scan = opts;
  scan.record = false;

  int last_sign = 0;  // -1 undershoot, +1 crossing
  double last_u_height = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double mth = m_min * std::exp(lstep * i);
    ShotClass c = classify(prm, mth, scan);
    out.samples.push_back({mth, c});
    int sign = 0;
    if (c.outcome == ShotOutcome::undershoot) sign = -1;
    if (c.outcome == ShotOutcome::crossing) sign = +1;
    if (c.outcome == ShotOutcome::inconclusive) ++out.inconclusive;
    if (sign != 0) {
      if (last_sign == -1 && sign == +1) {
        ++out.transitions;
        // refine the bracket to a candidate height
        double lo = last_u_height, hi = mth;
        for (int it = 0; it < 60 && (hi - lo) > 1e-6 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          ShotClass cc = classify(prm, mid, scan);
          if (cc.outcome == ShotOutcome::crossing)
            hi = mid;
          else
            lo = mid;
        }
        out.candidates.push_back(0.5 * (lo + hi));
      }
      last_sign = sign;
      if (sign == -1) last_u_height = mth;
    }
  }
  return out;
}

}  // namespace gslab
