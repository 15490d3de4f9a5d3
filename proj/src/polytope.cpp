#include "volprod/polytope.hpp"

#include "hull.hpp"
#include "volprod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace volprod {
namespace {

double max_abs_coordinate(std::span<const Vector> pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s > 0.0 ? s : 1.0;
}

int numeric_rank(const Matrix& m, double rel) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

int affine_rank(const std::vector<Vector>& pts, double rel) {
  if (pts.size() < 2) return 0;
  Matrix m(pts.front().size(), static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t i = 1; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i - 1)) = pts[i] - pts[0];
  return numeric_rank(m, rel);
}

struct PlaneCluster {
  Vector normal;
  double offset = 0.0;
  std::vector<int> members;  // triangulation-point indices
};

// Chooses k of m without repetition, calling f on each combination.
template <class F>
void for_each_combination(int m, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k > m) return;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

double binomial(int m, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

std::vector<Halfspace> normalized(std::span<const Halfspace> hs, int& dim) {
  if (hs.empty()) throw Error(ErrorKind::DegenerateInput, "no halfspaces");
  dim = static_cast<int>(hs.front().normal.size());
  std::vector<Halfspace> out;
  for (const auto& h : hs) {
    if (h.normal.size() != dim) throw Error(ErrorKind::InvalidArgument, "mixed halfspace dimensions");
    const double len = h.normal.norm();
    if (!(len > 0.0) || !std::isfinite(h.offset))
      throw Error(ErrorKind::InvalidArgument, "halfspace with zero or non-finite normal");
    out.push_back({h.normal / len, h.offset / len});
  }
  return out;
}

std::vector<Vector> enumerate_vertices_bruteforce(const std::vector<Halfspace>& hs, int dim,
                                                  double tol) {
  const int m = static_cast<int>(hs.size());
  if (binomial(m, dim) > 5e6) throw Error(ErrorKind::TooLarge, "too many halfspaces for enumeration");
  double scale = 1.0;
  for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset));
  std::vector<Vector> pts;
  for_each_combination(m, dim, [&](const std::vector<int>& idx) {
    Matrix a(dim, dim);
    Vector b(dim);
    for (int r = 0; r < dim; ++r) {
      a.row(r) = hs[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].normal.transpose();
      b(r) = hs[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].offset;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) return;
    const Vector x = lu.solve(b);
    if (!x.allFinite()) return;
    for (const auto& h : hs)
      if (h.normal.dot(x) > h.offset + tol * std::max(scale, x.cwiseAbs().maxCoeff())) return;
    pts.push_back(x);
  });
  return pts;
}

}  // namespace

Polytope Polytope::from_points(std::span<const Vector> input, const Tolerances& tol) {
  tol.validate();
  if (input.empty()) throw Error(ErrorKind::DegenerateInput, "no points");
  const double scale = max_abs_coordinate(input);
  const double geom = tol.tol_geom * scale;

  // Merge coincident inputs, remembering the first source index.
  std::vector<Vector> pts;
  std::vector<int> src;
  for (std::size_t i = 0; i < input.size(); ++i) {
    bool dup = false;
    for (const auto& q : pts) {
      if ((q - input[i]).cwiseAbs().maxCoeff() <= geom) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      pts.push_back(input[i]);
      src.push_back(static_cast<int>(i));
    }
  }

  const detail::HullTriangulation hull = detail::triangulated_hull(pts);
  const int d = static_cast<int>(pts.front().size());

  // Triangulation points (compacted) in input order.
  std::vector<int> used;
  for (const auto& s : hull.simplices) used.insert(used.end(), s.begin(), s.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> compact(pts.size(), -1);
  for (std::size_t i = 0; i < used.size(); ++i) compact[static_cast<std::size_t>(used[i])] = static_cast<int>(i);

  Polytope out;
  out.dim_ = d;
  out.tol_ = tol;
  BoundaryTriangulation& tri = out.triangulation_;
  tri.interior = hull.interior;
  for (int u : used) {
    tri.points.push_back(pts[static_cast<std::size_t>(u)]);
    tri.source.push_back(src[static_cast<std::size_t>(u)]);
  }
  for (const auto& s : hull.simplices) {
    std::vector<int> t;
    for (int v : s) t.push_back(compact[static_cast<std::size_t>(v)]);
    tri.simplices.push_back(std::move(t));
  }

  // Planes of the triangles, best conditioned first.
  struct Candidate {
    Vector normal;
    double offset;
    double quality;
    std::size_t simplex;
  };
  std::vector<Candidate> cands;
  for (std::size_t k = 0; k < tri.simplices.size(); ++k) {
    const auto& s = tri.simplices[k];
    const Vector& p0 = tri.points[static_cast<std::size_t>(s[0])];
    std::vector<Vector> edges;
    double prod = 1.0;
    for (int j = 1; j < d; ++j) {
      edges.push_back(tri.points[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])] - p0);
      prod *= std::max(edges.back().norm(), 1e-300);
    }
    Vector normal = generalized_cross(edges);
    const double len = normal.norm();
    if (!(len > 0.0)) continue;
    normal /= len;
    double offset = normal.dot(p0);
    if (normal.dot(tri.interior) > offset) {
      normal = -normal;
      offset = -offset;
    }
    cands.push_back({normal, offset, d >= 2 ? len / prod : 1.0, k});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.quality > b.quality; });

  std::vector<PlaneCluster> clusters;
  for (const auto& c : cands) {
    const auto& s = tri.simplices[c.simplex];
    bool placed = false;
    for (auto& cl : clusters) {
      if (cl.normal.dot(c.normal) <= 0.0) continue;
      bool on = true;
      for (int v : s) {
        if (std::abs(cl.normal.dot(tri.points[static_cast<std::size_t>(v)]) - cl.offset) > geom) {
          on = false;
          break;
        }
      }
      if (on) {
        cl.members.insert(cl.members.end(), s.begin(), s.end());
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({c.normal, c.offset, std::vector<int>(s.begin(), s.end())});
  }

  // Refit each plane on every triangulation point it carries.
  for (auto& cl : clusters) {
    std::vector<int> on;
    for (std::size_t i = 0; i < tri.points.size(); ++i)
      if (std::abs(cl.normal.dot(tri.points[i]) - cl.offset) <= geom) on.push_back(static_cast<int>(i));
    if (static_cast<int>(on.size()) > d) {
      Vector mean = Vector::Zero(d);
      for (int i : on) mean += tri.points[static_cast<std::size_t>(i)];
      mean /= static_cast<double>(on.size());
      Matrix centered(d, static_cast<Eigen::Index>(on.size()));
      for (std::size_t j = 0; j < on.size(); ++j)
        centered.col(static_cast<Eigen::Index>(j)) = tri.points[static_cast<std::size_t>(on[j])] - mean;
      Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinU);
      Vector normal = svd.matrixU().col(d - 1);
      if (normal.dot(cl.normal) < 0) normal = -normal;
      cl.normal = normal.normalized();
    }
    double offset = -std::numeric_limits<double>::infinity();
    for (int i : on) offset = std::max(offset, cl.normal.dot(tri.points[static_cast<std::size_t>(i)]));
    if (!on.empty()) cl.offset = offset;
    cl.members = on;
  }

  // Extreme points: the normals of the planes through them span R^d.
  std::vector<int> extreme_of_tri(tri.points.size(), -1);
  for (std::size_t i = 0; i < tri.points.size(); ++i) {
    std::vector<Vector> normals;
    for (const auto& cl : clusters)
      if (std::abs(cl.normal.dot(tri.points[i]) - cl.offset) <= geom) normals.push_back(cl.normal);
    if (static_cast<int>(normals.size()) < d) continue;
    if (numeric_rank(column_matrix(normals), 1e-8) == d) extreme_of_tri[i] = 0;
  }
  // Vertices in input order.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < tri.points.size(); ++i)
    if (extreme_of_tri[i] == 0) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tri.source[a] < tri.source[b]; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    extreme_of_tri[order[k]] = static_cast<int>(k);
    out.vertices_.push_back(tri.points[order[k]]);
    out.vertex_sources_.push_back(tri.source[order[k]]);
  }
  if (static_cast<int>(out.vertices_.size()) < d + 1)
    throw Error(ErrorKind::DegenerateInput, "hull has fewer than n+1 extreme points");

  for (const auto& cl : clusters) {
    Facet f;
    f.normal = cl.normal;
    f.offset = cl.offset;
    std::vector<Vector> fpts;
    for (int i : cl.members) {
      const int v = extreme_of_tri[static_cast<std::size_t>(i)];
      if (v >= 0) {
        f.vertices.push_back(v);
        fpts.push_back(out.vertices_[static_cast<std::size_t>(v)]);
      }
    }
    std::sort(f.vertices.begin(), f.vertices.end());
    // Planes touching only a lower-dimensional face are supporting but not facets.
    if (static_cast<int>(fpts.size()) < d || affine_rank(fpts, 1e-8) < d - 1) continue;
    out.facets_.push_back(std::move(f));
  }
  std::sort(out.facets_.begin(), out.facets_.end(),
            [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  out.scale_ = max_abs_coordinate(out.vertices_);
  return out;
}

Polytope Polytope::from_halfspaces(std::span<const Halfspace> halfspaces, const Tolerances& tol,
                                   const std::optional<Vector>& interior) {
  tol.validate();
  int dim = 0;
  const std::vector<Halfspace> hs = normalized(halfspaces, dim);
  double offset_scale = 0.0;
  for (const auto& h : hs) offset_scale = std::max(offset_scale, std::abs(h.offset));

  std::optional<Vector> center = interior;
  if (!center) {
    bool origin_inside = true;
    for (const auto& h : hs)
      if (!(h.offset > 1e-9 * std::max(offset_scale, 1e-300))) origin_inside = false;
    if (origin_inside) center = Vector::Zero(dim);
  }
  if (!center) {
    const auto pts = enumerate_vertices_bruteforce(hs, dim, tol.tol_geom);
    if (static_cast<int>(pts.size()) < dim + 1)
      throw Error(ErrorKind::DegenerateInput, "halfspaces do not bound a full-dimensional body");
    return from_points(pts, tol);
  }

  const Vector& c = *center;
  if (c.size() != dim) throw Error(ErrorKind::InvalidArgument, "interior point has wrong dimension");
  std::vector<Vector> dual;
  for (const auto& h : hs) {
    const double gap = h.offset - h.normal.dot(c);
    if (!(gap > 0.0)) throw Error(ErrorKind::CenterNotInterior, "given point is not strictly interior");
    dual.push_back(h.normal / gap);
  }
  const Polytope q = from_points(dual, tol);
  std::vector<Vector> pts;
  for (const auto& f : q.facets()) {
    if (!(f.offset > tol.tol_geom * q.scale()))
      throw Error(ErrorKind::DegenerateInput, "halfspaces do not bound a body");
    pts.push_back(c + f.normal / f.offset);
  }
  return from_points(pts, tol);
}

std::vector<Halfspace> Polytope::halfspaces() const {
  std::vector<Halfspace> out;
  out.reserve(facets_.size());
  for (const auto& f : facets_) out.push_back({f.normal, f.offset});
  return out;
}

Vector Polytope::vertex_centroid() const {
  Vector c = Vector::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Polytope Polytope::transformed(const Matrix& a, const Vector& b) const {
  std::vector<Vector> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(a * v + b);
  return from_points(pts, tol_);
}

Polytope Polytope::translated(const Vector& t) const {
  return transformed(Matrix::Identity(dim_, dim_), t);
}

Polytope Polytope::scaled(double factor) const {
  return transformed(factor * Matrix::Identity(dim_, dim_), Vector::Zero(dim_));
}

Polytope convex_hull(std::span<const Vector> points, const Tolerances& tol) {
  return Polytope::from_points(points, tol);
}

double interior_margin(const Polytope& p, const Vector& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets()) m = std::min(m, f.offset - f.normal.dot(x));
  return m;
}

Polytope polar_dual(const Polytope& p, const Vector& z) {
  if (z.size() != p.dim()) throw Error(ErrorKind::InvalidArgument, "center has wrong dimension");
  const double tol = p.tolerances().tol_geom * p.scale();
  std::vector<Vector> pts;
  pts.reserve(p.facets().size());
  for (const auto& f : p.facets()) {
    const double gap = f.offset - f.normal.dot(z);
    if (!(gap > tol)) throw Error(ErrorKind::CenterNotInterior, "polar center is not strictly interior");
    pts.push_back(z + f.normal / gap);
  }
  return Polytope::from_points(pts, p.tolerances());
}

Polytope polar_dual(const Polytope& p) { return polar_dual(p, Vector::Zero(p.dim())); }

double volume(const Polytope& p) {
  const auto& tri = p.triangulation();
  const int d = p.dim();
  const Vector& c = tri.interior;
  Matrix m(d, d);
  double sum = 0.0;
  for (const auto& s : tri.simplices) {
    for (int k = 0; k < d; ++k) m.col(k) = tri.points[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])] - c;
    sum += determinant(m);
  }
  return sum / factorial(d);
}

double inradius_gauge(const Polytope& k, const Polytope& t_polar) {
  if (k.dim() != t_polar.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const Vector o = Vector::Zero(k.dim());
  if (!(interior_margin(k, o) > k.tolerances().tol_geom * k.scale()) ||
      !(interior_margin(t_polar, o) > t_polar.tolerances().tol_geom * t_polar.scale())) {
    throw Error(ErrorKind::OriginNotInterior, "inradius needs o in the interior of both bodies");
  }
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : k.facets()) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& w : t_polar.vertices()) h = std::max(h, f.normal.dot(w));
    r = std::min(r, f.offset / h);
  }
  return r;
}

bool contains(const Polytope& p, const Vector& x) {
  const double tol = p.tolerances().tol_geom * p.scale();
  for (const auto& f : p.facets())
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

namespace {
Vector drop_axis(const Vector& v, int axis) {
  Vector out(v.size() - 1);
  for (Eigen::Index i = 0, j = 0; i < v.size(); ++i)
    if (i != axis) out(j++) = v(i);
  return out;
}
}  // namespace

Polytope coordinate_section(const Polytope& p, int axis) {
  if (axis < 0 || axis >= p.dim() || p.dim() < 2) throw Error(ErrorKind::InvalidArgument, "bad section axis");
  std::vector<Halfspace> hs;
  for (const auto& f : p.facets()) {
    Vector a = drop_axis(f.normal, axis);
    if (a.norm() <= 1e-12) {
      if (f.offset < 0) throw Error(ErrorKind::DegenerateInput, "hyperplane misses the body");
      continue;
    }
    hs.push_back({a, f.offset});
  }
  int dim = 0;
  const auto norm = normalized(hs, dim);
  const auto pts = enumerate_vertices_bruteforce(norm, dim, p.tolerances().tol_geom);
  if (static_cast<int>(pts.size()) < dim + 1)
    throw Error(ErrorKind::DegenerateInput, "section is not full-dimensional");
  return Polytope::from_points(pts, p.tolerances());
}

Polytope coordinate_projection(const Polytope& p, int axis) {
  if (axis < 0 || axis >= p.dim() || p.dim() < 2) throw Error(ErrorKind::InvalidArgument, "bad projection axis");
  std::vector<Vector> pts;
  for (const auto& v : p.vertices()) pts.push_back(drop_axis(v, axis));
  return Polytope::from_points(pts, p.tolerances());
}

double hausdorff_distance(std::span<const Vector> a, std::span<const Vector> b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Vector> x, std::span<const Vector> y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

PolarVolumeEvaluator::PolarVolumeEvaluator(const Polytope& body, const Vector& reference_center)
    : dim_(body.dim()) {
  for (const auto& f : body.facets()) {
    normals_.push_back(f.normal);
    offsets_.push_back(f.offset);
  }
  const Polytope polar = polar_dual(body, reference_center);
  const auto& tri = polar.triangulation();
  for (const auto& s : tri.simplices) {
    std::vector<int> t;
    for (int v : s) t.push_back(tri.source[static_cast<std::size_t>(v)]);
    simplices_.push_back(std::move(t));
  }
}

double PolarVolumeEvaluator::margin(const Vector& z) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals_.size(); ++i) m = std::min(m, offsets_[i] - normals_[i].dot(z));
  return m;
}

namespace {
std::vector<Vector> dual_vertices(const std::vector<Vector>& normals, const std::vector<double>& offsets,
                                  const Vector& z) {
  std::vector<Vector> w;
  w.reserve(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double gap = offsets[i] - normals[i].dot(z);
    if (!(gap > 0.0)) throw Error(ErrorKind::CenterNotInterior, "polar center left the body");
    w.push_back(normals[i] / gap);
  }
  return w;
}
}  // namespace

double PolarVolumeEvaluator::volume(const Vector& z) const {
  const auto w = dual_vertices(normals_, offsets_, z);
  Matrix m(dim_, dim_);
  double sum = 0.0;
  for (const auto& s : simplices_) {
    for (int k = 0; k < dim_; ++k) m.col(k) = w[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])];
    sum += determinant(m);
  }
  return sum / factorial(dim_);
}

PolarVolumeEvaluator::Moments PolarVolumeEvaluator::moments(const Vector& z) const {
  const auto w = dual_vertices(normals_, offsets_, z);
  const int d = dim_;
  Moments out;
  out.first = Vector::Zero(d);
  out.second = Matrix::Zero(d, d);
  Matrix m(d, d);
  const double fact = factorial(d);
  for (const auto& s : simplices_) {
    for (int k = 0; k < d; ++k) m.col(k) = w[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])];
    const double v = determinant(m) / fact;
    const Vector sum = m.rowwise().sum();
    out.volume += v;
    out.first += v * sum / (d + 1);
    out.second += v / ((d + 1.0) * (d + 2.0)) * (m * m.transpose() + sum * sum.transpose());
  }
  return out;
}

}  // namespace volprod
