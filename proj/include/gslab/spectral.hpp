#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "gslab/params.hpp"
#include "gslab/profile.hpp"
#include "gslab/rescale.hpp"

namespace gslab {

// Outer boundary closure. Exponentially localized states are served by a
// plain Dirichlet wall; zero-energy problems with algebraic tails need the
// decaying-harmonic condition u' = -(d-2) u / r to keep the wall from
// polluting the near-kernel direction.
enum class OuterBc { dirichlet, decaying };

// Mesh + potential recipe for -Δ_rad + q(r) on a truncated ball with zero
// flux at the origin. Uniform cells resolve the core, geometric cells the
// far field.
struct OperatorSpec {
  int d = 5;
  std::function<double(double)> potential;
  double h_core = 2e-3;
  double r_switch = 2.0;
  double rmax = 50.0;
  double alpha = 1e-3;  // relative spacing of the stretched zone
  OuterBc bc = OuterBc::dirichlet;
};

// Finite-volume discretization, symmetric under the r^{d-1} inner product;
// stored as the similarity-transformed symmetric tridiagonal together with
// the cell measures.
struct RadialOperator {
  int d = 0;
  Eigen::ArrayXd nodes;      // cell centers
  Eigen::ArrayXd potential;  // q(r_i)
  Eigen::ArrayXd weight;     // cell measures ∫ r^{d-1} dr
  Eigen::VectorXd diag;      // symmetric tridiagonal, diagonal
  Eigen::VectorXd offdiag;   // subdiagonal (size n-1)
  double rmax = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
  // y = L x in value space (x sampled at nodes)
  Eigen::ArrayXd apply(const Eigen::ArrayXd& x) const;
};

RadialOperator assemble(const OperatorSpec& spec);

// Linearization around a profile: q(r) = ω - p u^{p-1} - (d+2)/(d-2) u^{4/(d-2)}.
OperatorSpec linearize(const RadialProfile& u, const ProblemParams& prm);
// Same around the rescaled state: q = α - p β Φ̃^{p-1} - (d+2)/(d-2) Φ̃^{4/(d-2)};
// the spectrum of the original linearization is M^{4/(d-2)} times this one.
OperatorSpec linearize_rescaled(const RescaledState& state);
// -Δ - (d+2)/(d-2) W^{4/(d-2)}, whose radial kernel direction is ΛW.
OperatorSpec critical_linearization(int d, double rmax = 1e9);

struct EigenPair {
  double value = 0.0;
  Eigen::ArrayXd vector;  // value space, unit weighted norm
  double residual = 0.0;
};

struct SpectrumReport {
  std::vector<EigenPair> pairs;  // k closest to zero, by |value|
  double gap = 0.0;              // min |λ| over the whole discrete spectrum
  double truncation_radius = 0.0;
  double refinement_delta = 0.0;  // relative gap change under mesh doubling
};

SpectrumReport spectrum_near_zero(const RadialOperator& op, int k);
// Assembles, solves, then re-solves on a doubled mesh to fill refinement_delta.
SpectrumReport spectrum_near_zero(const OperatorSpec& spec, int k);

// Shift-zero inverse iteration seeded with `seed` sampled at the nodes;
// returns the converged pair (used to pull out a near-kernel direction).
EigenPair kernel_candidate(const RadialOperator& op, const RadialProfile& seed);

// Weighted-norm residual ||L c|| / ||c|| of a candidate kernel element,
// evaluated with independent five-point differentiation of the candidate.
double kernel_witness_check(const RadialOperator& op, const RadialProfile& candidate);

// Relative weighted-L2 mismatch of two node vectors after normalization and
// sign alignment.
double normalized_mismatch(const RadialOperator& op, const Eigen::ArrayXd& a,
                           const Eigen::ArrayXd& b);

}  // namespace gslab
