#include "volprod/symplectic.hpp"

#include "volprod/errors.hpp"
#include "volprod/mahler.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace volprod {
namespace {

double relative_tolerance(const Body& k, const Body& t) {
  if (body_is_exact(k) && body_is_exact(t)) return 1e-9;
  return std::max(body_tolerances(k).tol_quad, body_tolerances(t).tol_quad);
}

std::vector<Vector> search_directions(int n) {
  std::vector<Vector> out;
  if (n == 2) {
    for (int i = 0; i < 720; ++i) {
      const double a = 2.0 * std::numbers::pi * i / 720;
      Vector u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
  } else {
    Rng rng(0x1a7d);
    const int m = n == 3 ? 4000 : 5000 * (n - 2);
    for (int i = 0; i < m; ++i) out.push_back(rng.unit_vector(n));
    for (int i = 0; i < n; ++i) {
      out.push_back(Vector::Unit(n, i));
      out.push_back(-Vector::Unit(n, i));
    }
  }
  return out;
}

// min over unit u of f(u), by scan and a local simplex search.
double sphere_minimum(int n, const std::function<double(const Vector&)>& f) {
  const auto dirs = search_directions(n);
  double best = std::numeric_limits<double>::infinity();
  Vector arg;
  for (const auto& u : dirs) {
    const double v = f(u);
    if (v < best) {
      best = v;
      arg = u;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(arg);
  const Matrix basis = Matrix(qr.householderQ() * Matrix::Identity(n, n)).rightCols(n - 1);
  const auto res = nelder_mead([&](const Vector& c) { return f((arg + basis * c).normalized()); },
                               Vector::Zero(n - 1), 0.02, 1e-15, 4000);
  return std::min(best, res.value);
}

bool is_unconditional(const Body& k) {
  const int n = body_dim(k);
  if (const auto* p = std::get_if<Polytope>(&k)) {
    for (int i = 0; i < n; ++i) {
      Matrix r = Matrix::Identity(n, n);
      r(i, i) = -1.0;
      std::vector<Vector> image;
      for (const auto& v : p->vertices()) image.push_back(r * v);
      if (hausdorff_distance(p->vertices(), image) > p->tolerances().tol_geom * p->scale()) return false;
    }
    return true;
  }
  const auto& s = std::get<StarBody>(k);
  Rng rng(31);
  for (int j = 0; j < 200; ++j) {
    const Vector u = rng.unit_vector(n);
    const double r0 = s.radial(u);
    for (int i = 0; i < n; ++i) {
      Vector v = u;
      v(i) = -v(i);
      if (std::abs(s.radial(v) - r0) > s.tolerances().tol_geom) return false;
    }
  }
  return true;
}

ChainLink make_link(std::string name, double lhs, double rhs, double slack, double tol) {
  ChainLink l{std::move(name), lhs, rhs, slack, false};
  l.pass = slack >= -tol * std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return l;
}

}  // namespace

double inradius(const Body& k, const Body& t) {
  const int n = body_dim(k);
  if (body_dim(t) != n) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const auto* kp = std::get_if<Polytope>(&k);
  const auto* tp = std::get_if<Polytope>(&t);
  if (kp && tp) return inradius_gauge(*kp, polar_dual(*tp));
  if (kp) {
    // h_{T°}(a) = 1 / rho_T(a)
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : kp->facets()) r = std::min(r, f.offset * body_radial(t, f.normal));
    return r;
  }
  return sphere_minimum(n, [&](const Vector& u) { return body_radial(k, u) * body_support(t, u); });
}

CapacityReport chz_lagrangian(const Body& k, const Body& t) {
  const int n = body_dim(k);
  if (body_dim(t) != n) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (!body_centrally_symmetric(k) || !body_centrally_symmetric(t))
    throw Error(ErrorKind::NotCentrallySymmetric, "both factors must be centrally symmetric");
  CapacityReport r;
  r.n = n;
  r.inradius = inradius(k, t);
  r.c_hz = 4.0 * r.inradius;
  r.tolerance = relative_tolerance(k, t);
  return r;
}

CapacityReport viterbo_check(const Body& k, const Body& t) {
  CapacityReport r = chz_lagrangian(k, t);
  r.k_volume = body_volume(k);
  r.t_volume = body_volume(t);
  r.volume = r.k_volume * r.t_volume;
  r.viterbo_lhs = std::pow(r.c_hz, r.n);
  r.viterbo_rhs = factorial(r.n) * r.volume;
  r.pass = r.viterbo_lhs <= r.viterbo_rhs * (1.0 + r.tolerance);
  return r;
}

std::string mahler_class(const Body& k) {
  const int n = body_dim(k);
  if (n <= 3) return "dimension-at-most-3";
  if (is_unconditional(k)) return "1-unconditional";
  if (n <= kMaxDim && group_order({GroupFamily::ODiamond, n}) <= static_cast<double>(SymmetryGroup::kMaxOrder)) {
    if (body_invariant(k, SymmetryGroup::generate({GroupFamily::ODiamond, n})).invariant) return "o-diamond-invariant";
    if (n % 2 == 0 && body_invariant(k, SymmetryGroup::generate({GroupFamily::SODiamond, n})).invariant)
      return "so-diamond-invariant-even";
  }
  return "";
}

ViterboChain mahler_implies_viterbo_chain(const Body& k, const Body& t) {
  ViterboChain c;
  c.capacity = viterbo_check(k, t);
  c.mahler_class = mahler_class(k);
  if (c.mahler_class.empty())
    throw Error(ErrorKind::HypothesisNotCovered, "no known Mahler bound for this body");
  const int n = c.capacity.n;
  const double tol = c.capacity.tolerance;
  c.polar_volume = body_polar_volume(k);
  const double r = c.capacity.inradius;
  const double lhs1 = std::pow(r, -n) * c.capacity.t_volume;
  c.links.push_back(make_link("bipolar-inradius", lhs1, c.polar_volume, lhs1 - c.polar_volume, tol));
  const double bound = mahler_bound(n, BoundKind::Symmetric);
  const double product = c.capacity.k_volume * c.polar_volume;
  c.links.push_back(make_link("mahler-symmetric", product, bound, product - bound, tol));
  c.links.push_back(make_link("viterbo", c.capacity.viterbo_lhs, c.capacity.viterbo_rhs,
                              c.capacity.viterbo_rhs - c.capacity.viterbo_lhs, tol));
  c.pass = true;
  for (const auto& l : c.links) c.pass = c.pass && l.pass;
  return c;
}

}  // namespace volprod
