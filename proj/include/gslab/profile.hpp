#pragma once

#include <Eigen/Core>

#include "gslab/grid.hpp"

namespace gslab {

// Far-field model  u(r) ~ amplitude * r^{-power} * exp(-rate * r)  for
// r > grid.rmax(). rate == 0 encodes a purely algebraic tail.
struct TailModel {
  double amplitude = 0.0;
  double rate = 0.0;
  double power = 0.0;
};

// Near-origin even expansion  u(r) ~ c0 + c2 r^2 + c4 r^4  for r < grid.r0().
struct CoreModel {
  double c0 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
};

// A radial function sampled on a stretched grid, with derivative samples and
// analytic closures at both ends. Immutable in practice: operations build new
// profiles instead of mutating.
struct RadialProfile {
  RadialGrid grid;
  Eigen::ArrayXd values;
  Eigen::ArrayXd derivs;
  TailModel tail;
  CoreModel core;
  bool has_tail = false;
  bool has_core = false;

  int size() const { return grid.size(); }

  // Piecewise evaluation: core model / cubic Hermite / tail model.
  double value(double r) const;
  double deriv(double r) const;

  bool positive_decreasing() const;
};

RadialProfile scale_profile(const RadialProfile& u, double factor);

// Zero-extended truncation: drops the tail model (used for cutoff tests).
RadialProfile truncate_profile(const RadialProfile& u, double rmax);

double tail_value(const TailModel& t, double r);
double tail_deriv(const TailModel& t, double r);
double core_value(const CoreModel& c, double r);
double core_deriv(const CoreModel& c, double r);

// ∫_{rmax}^inf (A r^-s e^{-kr})^m |S^{d-1}| r^{d-1} dr. Algebraic tails use
// the closed form and throw DivergentNormError when non-integrable.
double tail_power_integral(const TailModel& t, double m, int d, double rmax);
// Same for the squared derivative of the tail (gradient contributions).
double tail_grad_integral(const TailModel& t, int d, double rmax);

// ∫_0^{r0} of the core polynomial raised to integer-ish power via quadrature.
double core_power_integral(const CoreModel& c, double m, int d, double r0);
double core_grad_integral(const CoreModel& c, int d, double r0);

}  // namespace gslab
