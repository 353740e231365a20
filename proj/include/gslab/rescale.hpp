#pragma once

#include <map>
#include <string>
#include <vector>

#include "gslab/ode.hpp"
#include "gslab/params.hpp"
#include "gslab/profile.hpp"

namespace gslab {

// The critically rescaled ground state Φ̃(x) = M^{-1} Φ(M^{-2/(d-2)} x) with
// its effective frequency α = ω M^{-4/(d-2)} and coupling β = M^{p-1-4/(d-2)}.
struct RescaledState {
  double m_omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  RadialProfile profile;
  ProblemParams params;
};

RescaledState rescale(const ShootingResult& result, const ProblemParams& prm);

// Max pointwise residual of -Δu + α u - β u^p - u^{(d+2)/(d-2)} over interior
// nodes, normalized by the largest term.
double rescaled_residual(const RescaledState& state);

// Kelvin transform K[u](x) = |x|^{-(d-2)} u(x/|x|^2); needs the tail model to
// close the image near the origin.
RadialProfile kelvin(const RadialProfile& u, int d);

// Seminorm/norm distances between two radial profiles on a shared grid with
// analytic end corrections.
double h1dot_norm_sq(const RadialProfile& u);
double h1dot_distance(const RadialProfile& u, const RadialProfile& v);
double lq_distance(const RadialProfile& u, const RadialProfile& v, double q);

// Distances of the rescaled state to the Talenti bubble: key "h1dot" plus
// "L<q>" for each requested q; every q must exceed d/(d-2).
std::map<std::string, double> talenti_distance(const RescaledState& state,
                                               const std::vector<double>& q_list);

}  // namespace gslab
