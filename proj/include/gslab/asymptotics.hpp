#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gslab/ode.hpp"
#include "gslab/params.hpp"
#include "gslab/rescale.hpp"

namespace gslab {

struct SweepRow {
  double omega = 0.0;
  double m_star = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double beta_over_alpha = 0.0;
  double h1dot_dist = 0.0;
  double l2_dist = 0.0;   // NaN when d <= 4 (the comparison norm diverges)
  double decay_sup = 0.0; // sup over nodes of (1+r)^{d-2} Φ̃(r)
  bool exp_tail_ok = false;
  std::string error;      // empty on success
};

struct SweepOptions {
  ShootOptions shoot;
  // consulted before solving; omega -> result
  std::function<bool(double, ShootingResult&)> cache_get;
  std::function<void(double, const ShootingResult&)> cache_put;
};

std::vector<SweepRow> sweep(int d, double p, const std::vector<double>& omega_list,
                            const SweepOptions& opts = {});

// The limit of β/α along the blow-up family:
//   2(p+1)/(4-(d-2)(p-1)) * |W|_2^2 / |W|_{p+1}^{p+1},
// computed by quadrature. Requires d >= 5 and p+1 > d/(d-2) (finite norms) and
// p < 2*-1 strictly (the denominator vanishes at the critical power).
double limit_constant(int d, double p);

struct DecayCheck {
  bool ok = false;
  double l0 = 0.0;
  double c0 = 0.0;  // smallest admissible prefactor for the scanned L0
  int nodes_checked = 0;
};

// Fits the far-field bound Φ̃(r) <= C0 α^{(d-2)/4} exp(-sqrt(α)/2 r) for
// r >= L0 α^{-1/2}, scanning L0 over a small ladder and reporting the
// smallest workable pair. Vacuously true when no node lies that far out.
DecayCheck exp_decay_check(const RescaledState& state);

// Energies of the cutoff bubbles V_eps = χ W_eps and their fitted smallness
// rates; y_max is the mountain-pass value of the two-term reduction and
// m_upper the action at the Nehari projection.
struct BubbleExpansionReport {
  std::vector<double> eps;
  std::vector<double> grad_sq, l2s, l2, lp1;
  std::vector<double> y_max, m_upper;
  double sigma_pow = 0.0;        // |∇W|^2 = σ^{d/2}
  double grad_rate = 0.0;        // slope of log(grad_sq - σ^{d/2}) vs log eps
  double crit_rate = 0.0;        // slope of log(σ^{d/2} - l2s) vs log eps
  double lp1_rate = 0.0;         // slope of log lp1 vs log eps
  double l2_rate = 0.0;          // slope of log l2 vs log eps (d >= 5)
  double y_log_coeff = 0.0;      // d = 4: fit of y_max - σ^{d/2}/d against eps|log eps|
  double y_log_quality = 0.0;    // relative spread of that fit coefficient
  bool fit_ok = false;
};

BubbleExpansionReport bubble_expansion(int d, double p, double omega,
                                       const std::vector<double>& eps_list);

}  // namespace gslab
