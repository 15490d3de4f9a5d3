#pragma once

#include "volprod/polytope.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"

#include <string>
#include <variant>

namespace volprod {

/// Either an exact polytope or a radial-function body.
using Body = std::variant<Polytope, StarBody>;

int body_dim(const Body& b);
const Tolerances& body_tolerances(const Body& b);
std::string body_kind(const Body& b);
bool body_is_exact(const Body& b);

/// Exact for polytopes, sphere quadrature otherwise.
double body_volume(const Body& b);
/// |K°| about the origin.
double body_polar_volume(const Body& b);
double body_radial(const Body& b, const Vector& x);
double body_support(const Body& b, const Vector& y);
bool body_centrally_symmetric(const Body& b);
InvarianceResult body_invariant(const Body& b, const SymmetryGroup& g);

}  // namespace volprod
