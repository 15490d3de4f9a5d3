#pragma once

#include "volprod/geometry.hpp"
#include "volprod/polytope.hpp"

#include <vector>

namespace fixtures {

using volprod::Vector;

inline std::vector<Vector> cube_points(int n) {
  std::vector<Vector> pts;
  for (int m = 0; m < (1 << n); ++m) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (m >> i) & 1 ? 1.0 : -1.0;
    pts.push_back(v);
  }
  return pts;
}

inline std::vector<Vector> cross_points(int n) {
  std::vector<Vector> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(Vector::Unit(n, i));
    pts.push_back(-Vector::Unit(n, i));
  }
  return pts;
}

inline volprod::Polytope cube(int n) { return volprod::Polytope::from_points(cube_points(n)); }
inline volprod::Polytope cross(int n) { return volprod::Polytope::from_points(cross_points(n)); }
inline volprod::Polytope simplex(int n) { return volprod::Polytope::from_points(volprod::simplex_vertices(n)); }

// hull of m random points and their negatives
inline volprod::Polytope random_symmetric(int n, int m, volprod::Rng& rng) {
  std::vector<Vector> pts;
  for (int i = 0; i < m; ++i) {
    Vector v = rng.gaussian_vector(n);
    pts.push_back(v);
    pts.push_back(-v);
  }
  return volprod::Polytope::from_points(pts);
}

inline volprod::Polytope random_polytope(int n, int m, volprod::Rng& rng) {
  std::vector<Vector> pts;
  for (int i = 0; i < m; ++i) pts.push_back(rng.gaussian_vector(n));
  return volprod::Polytope::from_points(pts);
}

inline double exact_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace fixtures
