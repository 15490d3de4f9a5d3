#pragma once

#include "volprod/geometry.hpp"

#include <span>
#include <vector>

namespace volprod::detail {

// Boundary triangulation produced by the incremental hull. Simplices index the
// input point list and are oriented so det(p_1 - c, ..., p_d - c) > 0 for the
// interior point c.
struct HullTriangulation {
  std::vector<std::vector<int>> simplices;
  Vector interior;
};

// Beneath-beyond (quickhull ordering) in dimension points[0].size().
// Coplanar input is tolerated; a retry on a jittered copy handles the
// degenerate horizon cases that slip through. Throws DegenerateInput when the
// points are not full-dimensional.
HullTriangulation triangulated_hull(std::span<const Vector> points);

}  // namespace volprod::detail
