#include "volprod/cli/body_spec.hpp"

#include "volprod/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace volprod::cli {
namespace {

using Json = nlohmann::ordered_json;

Vector parse_vector(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorKind::ParseError, std::string(what) + " entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<Vector> parse_points(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a non-empty array");
  std::vector<Vector> pts;
  for (const auto& p : j) pts.push_back(parse_vector(p, what));
  for (const auto& p : pts)
    if (p.size() != pts.front().size()) throw Error(ErrorKind::ParseError, std::string(what) + " have mixed dimensions");
  return pts;
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<Vector> cube_vertices(int n) {
  std::vector<Vector> pts;
  for (int m = 0; m < (1 << n); ++m) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = ((m >> i) & 1) ? 1.0 : -1.0;
    pts.push_back(v);
  }
  return pts;
}

std::vector<Vector> cross_vertices(int n) {
  std::vector<Vector> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(Vector::Unit(n, i));
    pts.push_back(-Vector::Unit(n, i));
  }
  return pts;
}

}  // namespace

bool is_shorthand(const std::string& name) {
  if (name == "cube" || name == "cross" || name == "simplex" || name == "ball") return true;
  if (name.rfind("lp:", 0) != 0) return false;
  char* end = nullptr;
  std::strtod(name.c_str() + 3, &end);
  return end != name.c_str() + 3 && *end == '\0';
}

std::vector<std::string> shorthand_names() { return {"cube", "cross", "simplex", "ball", "lp:<p>"}; }

Body shorthand_body(const std::string& name, int dim, const Tolerances& tol) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "dimension must be in [1, 8]");
  if (name == "cube") return Polytope::from_points(cube_vertices(dim), tol);
  if (name == "cross") return Polytope::from_points(cross_vertices(dim), tol);
  if (name == "simplex") return Polytope::from_points(simplex_vertices(dim), tol);
  if (name == "ball") return StarBody::unit_ball(dim).with_tolerances(tol);
  if (name.rfind("lp:", 0) == 0) {
    double p = 0.0;
    std::istringstream in(name.substr(3));
    if (!(in >> p) || !in.eof()) throw Error(ErrorKind::ParseError, "bad exponent in '" + name + "'");
    return StarBody::lp_ball(dim, p).with_tolerances(tol);
  }
  throw Error(ErrorKind::ParseError, "unknown body '" + name + "'");
}

Body parse_body(const Json& spec, const Tolerances& tol, int default_dim) {
  if (spec.is_string()) return shorthand_body(spec.get<std::string>(), default_dim, tol);
  if (!spec.is_object()) throw Error(ErrorKind::ParseError, "body record must be an object");
  const std::string kind = text(spec, "kind");
  if (kind == "vpolytope") return Polytope::from_points(parse_points(field(spec, "vertices"), "vertices"), tol);
  if (kind == "hpolytope") {
    const Json& list = field(spec, "halfspaces");
    if (!list.is_array() || list.empty()) throw Error(ErrorKind::ParseError, "halfspaces must be a non-empty array");
    std::vector<Halfspace> hs;
    for (const auto& h : list) {
      if (!h.is_object()) throw Error(ErrorKind::ParseError, "halfspace must be an object");
      hs.push_back({parse_vector(field(h, "normal"), "normal"), number(h, "offset")});
    }
    for (const auto& h : hs)
      if (h.normal.size() != hs.front().normal.size()) throw Error(ErrorKind::ParseError, "halfspaces have mixed dimensions");
    return Polytope::from_halfspaces(hs, tol);
  }
  if (kind == "lp_ball") {
    const double dim = number(spec, "dim");
    if (dim != static_cast<int>(dim)) throw Error(ErrorKind::ParseError, "dim must be an integer");
    return StarBody::lp_ball(static_cast<int>(dim), number(spec, "p")).with_tolerances(tol);
  }
  if (kind == "perturbed") {
    const Body base = parse_body(field(spec, "base"), tol, spec.contains("dim") ? static_cast<int>(number(spec, "dim")) : default_dim);
    StarBody star = std::holds_alternative<StarBody>(base) ? std::get<StarBody>(base)
                                                           : StarBody::from_polytope(std::get<Polytope>(base));
    const GroupSpec gs = parse_group_spec(text(spec, "group"), star.dim());
    const double seed = spec.contains("seed") ? number(spec, "seed") : 0.0;
    if (seed < 0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed)))
      throw Error(ErrorKind::ParseError, "seed must be a non-negative integer");
    return perturbed_invariant_body(star, SymmetryGroup::generate(gs), number(spec, "epsilon"),
                                    static_cast<std::uint64_t>(seed));
  }
  if (kind == "orbit_hull") {
    const auto pts = parse_points(field(spec, "points"), "points");
    const GroupSpec gs = parse_group_spec(text(spec, "group"), static_cast<int>(pts.front().size()));
    return orbit_hull(pts, SymmetryGroup::generate(gs), tol);
  }
  throw Error(ErrorKind::ParseError, "unknown body kind '" + kind + "'");
}

Body load_body(const std::string& arg, int dim, const Tolerances& tol) {
  std::ifstream in(arg);
  if (in) {
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, "cannot parse '" + arg + "': " + e.what());
    }
    try {
      return parse_body(j, tol, dim);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, "bad body record in '" + arg + "': " + e.what());
    }
  }
  if (is_shorthand(arg)) return shorthand_body(arg, dim, tol);
  throw Error(ErrorKind::ParseError, "no body file or shorthand named '" + arg + "'");
}

}  // namespace volprod::cli
