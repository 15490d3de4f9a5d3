#include "volprod/body.hpp"

#include "volprod/errors.hpp"

#include <limits>

namespace volprod {

int body_dim(const Body& b) {
  return std::visit([](const auto& k) { return k.dim(); }, b);
}

const Tolerances& body_tolerances(const Body& b) {
  return std::visit([](const auto& k) -> const Tolerances& { return k.tolerances(); }, b);
}

std::string body_kind(const Body& b) {
  if (std::holds_alternative<Polytope>(b)) return "polytope";
  switch (std::get<StarBody>(b).kind()) {
    case StarKind::LpBall: return "lp_ball";
    case StarKind::Perturbed: return "perturbed";
    case StarKind::PolytopeBacked: return "polytope_backed";
  }
  return "";
}

bool body_is_exact(const Body& b) { return std::holds_alternative<Polytope>(b); }

double body_volume(const Body& b) {
  if (const auto* p = std::get_if<Polytope>(&b)) return volume(*p);
  return volume_star(std::get<StarBody>(b));
}

double body_polar_volume(const Body& b) {
  if (const auto* p = std::get_if<Polytope>(&b)) return volume(polar_dual(*p));
  return polar_volume(std::get<StarBody>(b));
}

double body_radial(const Body& b, const Vector& x) {
  if (const auto* p = std::get_if<Polytope>(&b)) {
    if (!(x.norm() > 0.0)) throw Error(ErrorKind::ZeroVector, "radial function at the origin");
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : p->facets()) {
      const double a = f.normal.dot(x);
      if (a > 0.0) r = std::min(r, f.offset / a);
    }
    return r;
  }
  return std::get<StarBody>(b).radial(x);
}

double body_support(const Body& b, const Vector& y) {
  if (const auto* p = std::get_if<Polytope>(&b)) {
    if (!(y.norm() > 0.0)) throw Error(ErrorKind::ZeroVector, "support function at the origin");
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : p->vertices()) h = std::max(h, v.dot(y));
    return h;
  }
  return std::get<StarBody>(b).support(y);
}

bool body_centrally_symmetric(const Body& b) {
  return std::visit([](const auto& k) { return is_centrally_symmetric(k); }, b);
}

InvarianceResult body_invariant(const Body& b, const SymmetryGroup& g) {
  return std::visit([&](const auto& k) { return is_invariant(k, g); }, b);
}

}  // namespace volprod
