#pragma once

#include "volprod/geometry.hpp"

#include <cstdint>
#include <vector>

namespace volprod {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

/// Composite Gauss-Legendre on [lo, hi] with equal panels.
GaussRule composite_gauss(double lo, double hi, int panels, int points_per_panel);

/// Cubature on the unit sphere S^{n-1}; weights sum to its surface area.
struct SphereQuadrature {
  std::vector<Vector> nodes;
  std::vector<double> weights;
};

/// n = 2: composite Gauss on the circle. n = 3: Gauss in cos(theta) times
/// composite Gauss in phi, with panel breaks on the coordinate planes and the
/// diagonal half-planes. n >= 4: antipodal Monte Carlo, `mc_samples` nodes.
SphereQuadrature sphere_quadrature(int dim, const Tolerances& tol = {}, std::uint64_t seed = 0x5eed);

double sphere_area(int dim);

/// Cubature on D = {t in R^d : t_i >= 0, sum t_i <= 1}; weights sum to 1/d!.
/// Composite Gauss on the cube pulled back by the collapsed (Duffy) map.
struct SimplexRule {
  std::vector<Vector> nodes;
  std::vector<double> weights;
};
SimplexRule simplex_rule(int d, int level);

}  // namespace volprod
