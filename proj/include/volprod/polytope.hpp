#pragma once

#include "volprod/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace volprod {

/// normal . x <= offset
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct Facet {
  std::vector<int> vertices;  // ascending indices into Polytope::vertices()
  Vector normal;              // unit, outward
  double offset = 0.0;
};

/// Boundary triangulation; `points` may contain non-extreme boundary points
/// that the hull met before the face they lie on was completed.
struct BoundaryTriangulation {
  std::vector<Vector> points;
  std::vector<int> source;  // index of each point in the construction input
  std::vector<std::vector<int>> simplices;  // oriented outward w.r.t. `interior`
  Vector interior;
};

/// Full-dimensional convex polytope carrying both representations.
///
/// Instances are canonical: the vertex list holds extreme points only (in the
/// order they appeared in the input), facets are merged across coplanar
/// triangles, and no facet is redundant.
class Polytope {
 public:
  static Polytope from_points(std::span<const Vector> points, const Tolerances& tol = {});
  /// Vertex enumeration. With `interior` (or when o is strictly inside) the
  /// enumeration goes through the polar; otherwise every n-subset of
  /// constraints is solved.
  static Polytope from_halfspaces(std::span<const Halfspace> halfspaces,
                                  const Tolerances& tol = {},
                                  const std::optional<Vector>& interior = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const BoundaryTriangulation& triangulation() const { return triangulation_; }
  /// Input index of each vertex.
  const std::vector<int>& vertex_sources() const { return vertex_sources_; }
  std::vector<Halfspace> halfspaces() const;
  Vector vertex_centroid() const;
  /// Largest absolute coordinate; tolerances are scaled by it.
  double scale() const { return scale_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Image under x -> A x + b.
  Polytope transformed(const Matrix& a, const Vector& b) const;
  Polytope translated(const Vector& t) const;
  Polytope scaled(double factor) const;

 private:
  int dim_ = 0;
  double scale_ = 1.0;
  Tolerances tol_;
  std::vector<Vector> vertices_;
  std::vector<int> vertex_sources_;
  std::vector<Facet> facets_;
  BoundaryTriangulation triangulation_;
};

/// Convex hull with the facet complex; DegenerateInput when the points are
/// not full-dimensional.
Polytope convex_hull(std::span<const Vector> points, const Tolerances& tol = {});

/// Polar body about z: {y : (y - z).(x - z) <= 1 for x in P}.
/// CenterNotInterior unless z is strictly inside P.
Polytope polar_dual(const Polytope& p, const Vector& z);
Polytope polar_dual(const Polytope& p);

/// Lebesgue measure via the oriented cone fan over the boundary triangulation.
double volume(const Polytope& p);

/// sup { r > 0 : r T° in K } = min over facets (a, b) of K of b / h_{T°}(a).
double inradius_gauge(const Polytope& k, const Polytope& t_polar);

/// All facet inequalities within tol_geom (scaled); boundary counts as inside.
bool contains(const Polytope& p, const Vector& x);

/// Signed slack min_F (b_F - a_F . x); positive iff x is strictly inside.
double interior_margin(const Polytope& p, const Vector& x);

/// Section by the coordinate hyperplane {x_axis = 0}, as a body in R^{n-1}.
Polytope coordinate_section(const Polytope& p, int axis);
/// Orthogonal projection onto {x_axis = 0}, as a body in R^{n-1}.
Polytope coordinate_projection(const Polytope& p, int axis);

/// max over a of min over b of |a - b|, symmetrized.
double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b);

/// Fast |K^z| for a fixed polytope K and moving center z.
///
/// The polar about z is the image of the polar about a reference center under
/// an admissible projective map, so a single boundary triangulation of the
/// polar serves every interior z: the vertex dual to facet F sits at
/// a_F / (b_F - a_F . z) relative to z.
class PolarVolumeEvaluator {
 public:
  PolarVolumeEvaluator(const Polytope& body, const Vector& reference_center);

  struct Moments {
    double volume = 0.0;
    Vector first;   // integral of w over K^z - z
    Matrix second;  // integral of w w^T over K^z - z
  };

  double volume(const Vector& z) const;
  Moments moments(const Vector& z) const;
  /// min_F (b_F - a_F . z).
  double margin(const Vector& z) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<Vector> normals_;
  std::vector<double> offsets_;
  std::vector<std::vector<int>> simplices_;  // indices into facets
};

}  // namespace volprod
