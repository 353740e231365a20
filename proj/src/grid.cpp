#include "gslab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "gslab/errors.hpp"

namespace gslab {

double surface_area(int d) {
  if (d < 1) throw InvalidDimensionError("surface_area: d >= 1 required");
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double RadialGrid::shell_volume() const {
  return surface_area(dim) * (std::pow(rmax(), dim) - std::pow(r0(), dim)) / dim;
}

RadialGrid make_grid_from_nodes(int d, const Eigen::ArrayXd& nodes) {
  const int n = static_cast<int>(nodes.size()) - 1;
  if (d < 3) throw InvalidDimensionError("make_grid_from_nodes: d >= 3 required");
  if (n < 2 || n % 2 != 0)
    throw InvalidParameterError("make_grid_from_nodes: need an even interval count >= 2");
  for (int i = 0; i < n; ++i)
    if (!(nodes(i + 1) > nodes(i)))
      throw InvalidParameterError("make_grid_from_nodes: nodes must be strictly increasing");
  if (!(nodes(0) > 0.0)) throw InvalidParameterError("make_grid_from_nodes: r_0 > 0 required");

  RadialGrid g;
  g.dim = d;
  g.nodes = nodes;
  g.weights = Eigen::ArrayXd::Zero(n + 1);

  const double sd = surface_area(d);
  // Composite Simpson over consecutive interval pairs; exact for quadratics
  // even on non-uniform spacing.
  for (int i = 0; i + 2 <= n; i += 2) {
    const double h0 = nodes(i + 1) - nodes(i);
    const double h1 = nodes(i + 2) - nodes(i + 1);
    const double hs = h0 + h1;
    const double c0 = hs * (2.0 * h0 - h1) / (6.0 * h0);
    const double c1 = hs * hs * hs / (6.0 * h0 * h1);
    const double c2 = hs * (2.0 * h1 - h0) / (6.0 * h1);
    g.weights(i) += c0 * sd * std::pow(nodes(i), d - 1);
    g.weights(i + 1) += c1 * sd * std::pow(nodes(i + 1), d - 1);
    g.weights(i + 2) += c2 * sd * std::pow(nodes(i + 2), d - 1);
  }
  return g;
}

RadialGrid make_geometric_grid(int d, double r0, double r1, int n) {
  if (!(r0 > 0.0) || !(r1 > r0)) throw InvalidParameterError("make_geometric_grid: need 0 < r0 < r1");
  if (n < 2) throw InvalidParameterError("make_geometric_grid: n >= 2 required");
  if (n % 2 != 0) ++n;
  Eigen::ArrayXd nodes(n + 1);
  const double lr = std::log(r1 / r0) / n;
  for (int i = 0; i <= n; ++i) nodes(i) = r0 * std::exp(lr * i);
  nodes(n) = r1;
  return make_grid_from_nodes(d, nodes);
}

int auto_node_count(double r0, double r1, double alpha, int n_min, int n_max) {
  const int n = static_cast<int>(std::ceil(std::log(r1 / r0) / alpha));
  return std::max(n_min, std::min(n_max, n));
}

}  // namespace gslab
