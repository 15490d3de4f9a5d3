#include "volprod/signed_volume.hpp"

#include "volprod/errors.hpp"
#include "volprod/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace volprod {
namespace {

void require_independent(std::span<const Vector> a, int dim) {
  if (a.empty()) throw Error(ErrorKind::DependentVectors, "empty spanning set");
  if (static_cast<int>(a.size()) > dim) throw Error(ErrorKind::DependentVectors, "more spanning vectors than dimensions");
  double norms = 1.0;
  for (const auto& v : a) {
    if (v.size() != dim) throw Error(ErrorKind::InvalidArgument, "spanning vector has wrong dimension");
    const double len = v.norm();
    if (!(len > 0.0)) throw Error(ErrorKind::DependentVectors, "zero spanning vector");
    norms *= len * len;
  }
  const Matrix m = column_matrix(a);
  const double gram = determinant(m.transpose() * m);
  if (!(gram / norms > 1e-12)) throw Error(ErrorKind::DependentVectors, "spanning vectors are linearly dependent");
}

Vector simplex_point(std::span<const Vector> a, const Vector& t) {
  Vector s = a[0];
  for (Eigen::Index i = 0; i < t.size(); ++i) s += t(i) * (a[static_cast<std::size_t>(i + 1)] - a[0]);
  return s;
}

double gram_root(std::span<const Vector> a) {
  const Matrix m = column_matrix(a);
  return std::sqrt(std::max(0.0, determinant(m.transpose() * m)));
}

template <class F>
double integrate_simplex(int d, int level, F&& f) {
  const SimplexRule r = simplex_rule(d, level);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

template <class F>
Vector integrate_simplex_vector(int d, int level, int dim, F&& f) {
  const SimplexRule r = simplex_rule(d, level);
  Vector s = Vector::Zero(dim);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

// Lambda of the patch point over parameter t.
Vector image_point(const StarBody& k, std::span<const Vector> a, const Vector& t) {
  const Vector s = simplex_point(a, t);
  return k.gauge_gradient(k.radial(s) * s);
}

// Central-difference Jacobian columns of t -> g(t).
template <class G>
std::vector<Vector> parameter_derivatives(G&& g, const Vector& t) {
  constexpr double h = 1e-4;
  std::vector<Vector> out;
  Vector tp = t, tm = t;
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    tp(j) = t(j) + h;
    tm(j) = t(j) - h;
    out.push_back((g(tp) - g(tm)) / (2.0 * h));
    tp(j) = t(j);
    tm(j) = t(j);
  }
  return out;
}

double wrap_angle(double a) { return std::atan2(std::sin(a), std::cos(a)); }

// (1/2) int h_L^{-2} over the normal angles of L = K cap span(B) between the
// outer normals at the two endpoints.
double section_polar_sector(const StarBody& k, const Matrix& basis, const Vector& n0, const Vector& n1,
                            double arc, const Tolerances& tol) {
  constexpr int m = 4096;
  const double two_pi = 2.0 * std::numbers::pi;
  auto boundary = [&](double phi) {
    Eigen::Vector2d c(std::cos(phi), std::sin(phi));
    const Vector x = basis * Vector(c);
    return Eigen::Vector2d(k.radial(x) * c);
  };
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(m);
  for (int j = 0; j < m; ++j) pts.push_back(boundary(two_pi * j / m));
  auto h_section = [&](double theta) {
    const Eigen::Vector2d d(std::cos(theta), std::sin(theta));
    int best = 0;
    for (int j = 1; j < m; ++j)
      if (pts[static_cast<std::size_t>(j)].dot(d) > pts[static_cast<std::size_t>(best)].dot(d)) best = j;
    double lo = two_pi * (best - 2) / m, hi = two_pi * (best + 2) / m;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = boundary(x1).dot(d), f2 = boundary(x2).dot(d);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = boundary(x2).dot(d);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = boundary(x1).dot(d);
      }
    }
    return std::max({f1, f2, pts[static_cast<std::size_t>(best)].dot(d)});
  };
  const double t0 = std::atan2(n0(1), n0(0));
  double span = wrap_angle(std::atan2(n1(1), n1(0)) - t0);
  if (span * arc < 0.0) span += arc > 0.0 ? two_pi : -two_pi;
  const GaussRule rule = composite_gauss(0.0, 1.0, 8, 4 * tol.quad_subdivisions);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double h = h_section(t0 + span * rule.nodes[i]);
    s += rule.weights[i] / (h * h);
  }
  return 0.5 * std::abs(span) * s;
}

double spread(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return (hi - lo) / std::max(std::abs(hi), 1e-300);
}

std::vector<Vector> without(std::span<const Vector> a, std::size_t skip) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (i != skip) out.push_back(a[i]);
  return out;
}

}  // namespace

PatchVector patch_vector(const StarBody& k, std::span<const Vector> a) {
  const int n = k.dim();
  if (n < 2 || static_cast<int>(a.size()) != n - 1)
    throw Error(ErrorKind::InvalidArgument, "patch_vector needs n-1 spanning vectors");
  require_independent(a, n);
  const Vector normal = generalized_cross(a);
  const int level = k.tolerances().quad_subdivisions;
  auto integrand = [&](const Vector& t) { return std::pow(k.radial(simplex_point(a, t)), n - 1); };
  const double fine = integrate_simplex(n - 2, level, integrand);
  const double coarse = integrate_simplex(n - 2, std::max(0, level - 1), integrand);
  PatchVector pv;
  pv.vector = fine / (n - 1) * normal;
  pv.patch = {k, std::vector<Vector>(a.begin(), a.end()), 1};
  pv.error_estimate = std::abs(fine - coarse) / (n - 1) * normal.norm();
  return pv;
}

PatchVector lambda_patch_vector(const StarBody& k, std::span<const Vector> a) {
  const int n = k.dim();
  if (n < 2 || static_cast<int>(a.size()) != n - 1)
    throw Error(ErrorKind::InvalidArgument, "lambda_patch_vector needs n-1 spanning vectors");
  require_independent(a, n);
  const int level = k.tolerances().quad_subdivisions;
  auto integrand = [&](const Vector& t) {
    auto image = [&](const Vector& s) { return image_point(k, a, s); };
    std::vector<Vector> cols{image(t)};
    for (auto& d : parameter_derivatives(image, t)) cols.push_back(std::move(d));
    return Vector(generalized_cross(cols));
  };
  const Vector fine = integrate_simplex_vector(n - 2, level, n, integrand);
  const Vector coarse = integrate_simplex_vector(n - 2, std::max(0, level - 1), n, integrand);
  PatchVector pv;
  pv.vector = fine / (n - 1);
  pv.patch = {k, std::vector<Vector>(a.begin(), a.end()), 1};
  pv.error_estimate = (fine - coarse).norm() / (n - 1);
  return pv;
}

double cone_volume(const StarBody& k, std::span<const Vector> a) {
  require_independent(a, k.dim());
  const int m = static_cast<int>(a.size());
  if (m == 1) return k.radial(a[0]) * a[0].norm();
  const double integral = integrate_simplex(m - 1, k.tolerances().quad_subdivisions, [&](const Vector& t) {
    return std::pow(k.radial(simplex_point(a, t)), m);
  });
  return integral * gram_root(a) / m;
}

double polar_cone_volume(const StarBody& k, std::span<const Vector> a) {
  require_independent(a, k.dim());
  const int m = static_cast<int>(a.size());
  if (m == 1) return a[0].norm() / k.support(a[0]);
  const double integral = integrate_simplex(m - 1, k.tolerances().quad_subdivisions, [&](const Vector& t) {
    return std::pow(k.support(simplex_point(a, t)), -m);
  });
  return integral * gram_root(a) / m;
}

double lambda_cone_volume(const StarBody& k, std::span<const Vector> a) {
  require_independent(a, k.dim());
  const int m = static_cast<int>(a.size());
  const Matrix basis = orthonormal_basis(a);
  auto w = [&](const Vector& t) { return Vector(basis.transpose() * image_point(k, a, t)); };
  if (m == 1) return std::abs(w(Vector(0))(0));
  const double integral = integrate_simplex(m - 1, k.tolerances().quad_subdivisions, [&](const Vector& t) {
    std::vector<Vector> cols{w(t)};
    for (auto& d : parameter_derivatives(w, t)) cols.push_back(std::move(d));
    return determinant(column_matrix(cols));
  });
  return std::abs(integral) / m;
}

SignedEstimate signed_estimate_check(const StarBody& k, std::span<const Vector> spanning, const Vector& x) {
  const int n = k.dim();
  if (static_cast<int>(spanning.size()) != n) throw Error(ErrorKind::InvalidArgument, "need n spanning vectors");
  require_independent(spanning, n);
  if (x.size() != n) throw Error(ErrorKind::InvalidArgument, "test point has wrong dimension");
  if (x.norm() > 0.0 && k.gauge(x) > 1.0 + k.tolerances().tol_quad)
    throw Error(ErrorKind::PointOutside, "test point is outside the body");
  SignedEstimate r;
  Vector total = Vector::Zero(n);
  for (std::size_t i = 0; i < spanning.size(); ++i) {
    const auto face = without(spanning, i);
    Vector c = patch_vector(k, face).vector;
    r.face_vectors.push_back(c);
    total += (i % 2 == 0 ? 1.0 : -1.0) * c;
  }
  r.lhs = total.dot(x) / n;
  r.rhs = cone_volume(k, spanning);
  r.pass = r.lhs <= r.rhs + k.tolerances().tol_quad;
  return r;
}

DualityIdentity duality_identity(const StarBody& k, std::span<const Vector> a) {
  if (!k.is_smooth()) throw Error(ErrorKind::NonSmoothKind, "duality identity needs Lambda");
  const int n = k.dim();
  DualityIdentity r;
  r.patch = patch_vector(k, a).vector;
  r.image_patch = lambda_patch_vector(k, a).vector;
  r.lhs = r.patch.dot(r.image_patch);
  r.cone = cone_volume(k, a);
  if (n == 3) {
    const Matrix basis = orthonormal_basis(a);
    const Vector x0 = k.radial(a[0]) * a[0];
    const Vector x1 = k.radial(a[1]) * a[1];
    const Vector n0 = basis.transpose() * k.gauge_gradient(x0);
    const Vector n1 = basis.transpose() * k.gauge_gradient(x1);
    const Vector c1 = basis.transpose() * a[1];
    const double arc = std::atan2(c1(1), c1(0));
    r.polar_cone = section_polar_sector(k, basis, n0, n1, arc, k.tolerances());
  } else {
    r.polar_cone = lambda_cone_volume(k, a);
  }
  r.rhs = r.cone * r.polar_cone;
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double bf_factor(double alpha, int k) { return (1.0 - alpha) / (k * (1.0 + (k - 2) * alpha)); }

BfResult bf_inequality(const StarBody& k, double alpha, int level, std::span<const Vector> frame) {
  if (!k.is_smooth()) throw Error(ErrorKind::NonSmoothKind, "the inequality needs Lambda");
  if (level < 2 || level > static_cast<int>(frame.size()) || level > k.dim())
    throw Error(ErrorKind::InvalidArgument, "level must satisfy 2 <= k <= min(n, frame size)");
  if (!(std::abs(alpha) < 1.0) || std::abs(alpha + 1.0 / (level - 1)) < 1e-12)
    throw Error(ErrorKind::InvalidArgument, "alpha must satisfy |alpha| < 1 and alpha != -1/(k-1)");
  const std::vector<Vector> a(frame.begin(), frame.begin() + level);
  for (int i = 0; i < level; ++i)
    for (int j = 0; j < level; ++j) {
      const double want = i == j ? 1.0 : alpha;
      if (std::abs(a[static_cast<std::size_t>(i)].dot(a[static_cast<std::size_t>(j)]) - want) > k.tolerances().tol_geom)
        throw Error(ErrorKind::InvalidArgument, "frame Gram matrix does not match alpha");
    }
  require_independent(a, k.dim());
  const double hyp_tol = 10.0 * k.tolerances().tol_quad;
  BfResult r;

  std::vector<double> cones, images;
  double contain = 0.0;
  for (int i = 0; i < level; ++i) {
    const auto sub = without(a, static_cast<std::size_t>(i));
    cones.push_back(cone_volume(k, sub));
    images.push_back(lambda_cone_volume(k, sub));
    const Matrix basis = orthonormal_basis(sub);
    const SimplexRule probe = simplex_rule(static_cast<int>(sub.size()) - 1, 2);
    for (const auto& t : probe.nodes) {
      const Vector l = image_point(k, sub, t);
      contain = std::max(contain, (l - basis * (basis.transpose() * l)).norm() / l.norm());
    }
  }
  r.hypothesis_residuals = {spread(cones), contain, spread(images)};
  for (int h = 0; h < 3; ++h)
    if (r.hypothesis_residuals[static_cast<std::size_t>(h)] > hyp_tol)
      throw Error(ErrorKind::HypothesisViolated, "hypothesis (" + std::to_string(h + 1) + ") fails numerically", h + 1);

  r.factor = bf_factor(alpha, level);
  r.lhs = cone_volume(k, a) * lambda_cone_volume(k, a);
  // a_1..a_{k-1} is the face obtained by dropping the last vector.
  r.rhs = r.factor * cones.back() * images.back();
  r.pass = r.lhs >= r.rhs - k.tolerances().tol_quad;
  return r;
}

double ik_chain_end(int n, GroupFamily family) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "chain needs n >= 2");
  const bool simplex = family == GroupFamily::OSimplex || family == GroupFamily::SOSimplex;
  if (simplex) return 2.0 * n * std::pow(n + 1.0, n - 2) / (factorial(n) * factorial(n));
  return 1.0 / factorial(n - 1);
}

IkChain ik_chain(const StarBody& k0, const GroupSpec& spec) {
  if (k0.dim() != spec.dim) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const SymmetryGroup g = SymmetryGroup::generate(spec);
  if (!is_invariant(k0, g).invariant) throw Error(ErrorKind::NotInvariant, "body is not invariant under the group");
  const int n = spec.dim;
  const auto frame = g.frame();
  IkChain c;
  c.alpha = spec.is_simplex() ? -1.0 / n : 0.0;
  c.dilation = 1.0 / k0.radial(frame.front());
  const StarBody k = k0.scaled(c.dilation);
  const std::vector<Vector> first{frame.front()};
  c.values.push_back(cone_volume(k, first) * lambda_cone_volume(k, first));
  c.chained_bound = c.values.front();
  c.pass = true;
  for (int level = 2; level <= n - 1; ++level) {
    const BfResult b = bf_inequality(k, c.alpha, level, frame);
    c.values.push_back(b.lhs);
    c.factors.push_back(b.factor);
    c.step_passes.push_back(b.pass);
    c.chained_bound *= b.factor;
    c.pass = c.pass && b.pass;
  }
  c.chain_end = ik_chain_end(n, spec.family);
  const double last = c.values.back();
  c.pass = c.pass && last >= c.chain_end - k.tolerances().tol_quad;
  if (spec.is_simplex())
    c.product_lower_bound = (n + 1.0) * (n + 1.0) * (n + 1.0) / (2.0 * n) * last;
  else
    c.product_lower_bound = std::pow(4.0, n) / n * last;
  return c;
}

}  // namespace volprod
