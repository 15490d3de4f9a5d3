#pragma once

#include "volprod/geometry.hpp"
#include "volprod/polytope.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace volprod {

class StarBody;

enum class GroupFamily { OSimplex, SOSimplex, ODiamond, SODiamond };

struct GroupSpec {
  GroupFamily family = GroupFamily::SODiamond;
  int dim = 3;

  bool is_simplex() const { return family == GroupFamily::OSimplex || family == GroupFamily::SOSimplex; }
  bool is_rotation_only() const { return family == GroupFamily::SOSimplex || family == GroupFamily::SODiamond; }
};

/// "o-simplex", "so-simplex", "o-diamond", "so-diamond".
std::string to_string(GroupFamily family);
GroupSpec parse_group_spec(std::string_view family, int dim);

/// Expected order from the closed formulas.
double group_order(const GroupSpec& spec);

struct GroupElement {
  Matrix matrix;
  int det = 1;
};

/// Finite orthogonal group, enumerated eagerly.
class SymmetryGroup {
 public:
  static constexpr std::size_t kMaxOrder = 1000000;

  /// TooLarge past kMaxOrder elements.
  static SymmetryGroup generate(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  /// Small generating set; invariance under these implies invariance under the group.
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Index of the element equal to m (entrywise within 1e-6), or -1.
  int find(const Matrix& m) const;

  /// Frame whose positive hull is the fundamental cone: v_1..v_n for the
  /// simplex families, e_1..e_n for the diamond families.
  std::vector<Vector> frame() const;

 private:
  GroupSpec spec_;
  std::vector<GroupElement> elements_;
  std::vector<Matrix> generators_;
  std::unordered_multimap<std::uint64_t, int> lookup_;
  void index();
};

struct InvarianceResult {
  bool invariant = false;
  double residual = 0.0;
};

/// Polytopes: max over generators of the Hausdorff distance between the
/// vertex set and its image, compared with tol_geom. Star bodies: max sampled
/// |rho(g u) - rho(u)|.
InvarianceResult is_invariant(const Polytope& k, const SymmetryGroup& g);
InvarianceResult is_invariant(const StarBody& k, const SymmetryGroup& g, int samples = 200,
                              std::uint64_t seed = 17);

/// Residual of K = -K.
double central_symmetry_residual(const Polytope& k);
double central_symmetry_residual(const StarBody& k, int samples = 200, std::uint64_t seed = 23);
bool is_centrally_symmetric(const Polytope& k);
bool is_centrally_symmetric(const StarBody& k);

/// Hull of the union of the orbits.
Polytope orbit_hull(std::span<const Vector> points, const SymmetryGroup& g, const Tolerances& tol = {});

/// Orbit hull of `generators_count` random points (uniform direction, norm in
/// [0.5, 1.5]). Degenerate draws are redrawn up to 10 times.
Polytope random_invariant_body(const SymmetryGroup& g, std::uint64_t seed, int generators_count,
                               const Tolerances& tol = {});
Polytope random_invariant_body(const GroupSpec& spec, std::uint64_t seed, int generators_count,
                               const Tolerances& tol = {});

/// max over sampled boundary x and all g of |g Lambda(x) - Lambda(g x)|.
double check_equivariance(const StarBody& k, const SymmetryGroup& g, int samples = 100,
                          std::uint64_t seed = 29);

}  // namespace volprod
