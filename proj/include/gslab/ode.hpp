#pragma once

#include <utility>
#include <vector>

#include "gslab/functionals.hpp"
#include "gslab/params.hpp"
#include "gslab/profile.hpp"

namespace gslab {

enum class ShotOutcome { crossing, undershoot, decay, inconclusive };

struct ShotClass {
  ShotOutcome outcome = ShotOutcome::inconclusive;
  double radius = 0.0;  // where the classifying event was located
};

const char* to_string(ShotOutcome c);

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double horizon = 0.0;      // 0: derived from omega
  double hmax_rel = 0.0;     // cap h <= hmax_rel * r (0: uncapped)
  bool subcritical_term = true;
  bool critical_term = true;
  bool record = false;       // keep dense-output coefficients
  double decay_height = 1e-8;  // u below this fraction of M counts as decayed
};

// One accepted integrator step with its continuous extension.
struct DenseStep {
  double r = 0.0, h = 0.0;
  // interpolation coefficients per component (u, u')
  double c[5][2] = {};
};

struct Trajectory {
  std::vector<DenseStep> steps;
  double r_end = 0.0, u_end = 0.0, v_end = 0.0;

  // Evaluate (u, u') inside the recorded range.
  std::pair<double, double> eval(double r) const;
};

// Integrate the radial equation u'' + (d-1)/r u' = ω u - |u|^{p-1}u - |u|^{q-1}u
// from a quartic series start at r ~ 1e-6 (1+ω)^{-1/2} with u(0) = height.
std::pair<Trajectory, ShotClass> integrate_shot(const ProblemParams& prm, double height,
                                                const OdeOptions& opts = {});

struct ShootOptions {
  double bisect_tol = 1e-12;  // relative bracket width on the height
  OdeOptions ode;
};

struct ShootingResult {
  double m_star = 0.0;
  double m_low = 0.0, m_high = 0.0;
  RadialProfile profile;
  std::vector<std::pair<double, ShotClass>> trace;
  double ode_residual = 0.0;
  // relative slope mismatch where the far-field continuation meets the
  // outward trajectory
  double tail_match_delta = 0.0;
  FunctionalReport report;
};

// Locate the ground-state height by undershoot/crossing bisection, then build
// the profile with core and exponential-tail closures.
ShootingResult shoot(const ProblemParams& prm, const ShootOptions& opts = {});

struct CensusSample {
  double height = 0.0;
  ShotClass shot;
};

struct CensusResult {
  int transitions = 0;
  int inconclusive = 0;
  std::vector<CensusSample> samples;
  std::vector<double> candidates;  // refined heights, one per transition
};

// Scan heights over [m_min, m_max] (log-spaced) and count
// undershoot -> crossing changes of the classification.
CensusResult ground_state_census(const ProblemParams& prm, double m_min, double m_max,
                                 int samples, const OdeOptions& opts = {});

// Flow energy 1/2 u'^2 - ω/2 u^2 + |u|^{p+1}/(p+1) + |u|^{2*}/2*, non-increasing
// along trajectories (friction -(d-1)/r u'^2).
double flow_energy(const ProblemParams& prm, double u, double v);

}  // namespace gslab
