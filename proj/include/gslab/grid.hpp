#pragma once

#include <Eigen/Core>

namespace gslab {

// Surface measure of the unit sphere S^{d-1}.
double surface_area(int d);

// Strictly increasing radii with quadrature weights that already include the
// surface factor |S^{d-1}| r^{d-1}, so  sum_i w_i f(r_i) ~ ∫_{r_0}^{r_N} f(r)
// |S^{d-1}| r^{d-1} dr  (composite Simpson on node triples).
struct RadialGrid {
  int dim = 0;
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
  double r0() const { return nodes(0); }
  double rmax() const { return nodes(nodes.size() - 1); }

  // Exact shell volume |S^{d-1}| (r_N^d - r_0^d)/d, the weight-sum oracle.
  double shell_volume() const;
};

// Build a grid from an explicit strictly increasing node list.
RadialGrid make_grid_from_nodes(int d, const Eigen::ArrayXd& nodes);

// Geometric grid r_i = r0 * rho^i with n+1 nodes reaching r1. n is rounded up
// to an even interval count.
RadialGrid make_geometric_grid(int d, double r0, double r1, int n);

// Node count giving log-spacing ratio ~ exp(alpha) over [r0, r1], clamped.
int auto_node_count(double r0, double r1, double alpha = 1.25e-3, int n_min = 4000,
                    int n_max = 16000);

}  // namespace gslab
