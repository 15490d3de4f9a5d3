#pragma once

#include "volprod/body.hpp"
#include "volprod/polytope.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace volprod {

struct SantaloResult {
  Vector point;
  double polar_volume = 0.0;  // |K^z| at the returned point
  int iterations = 0;
  double gradient_norm = 0.0;
};

/// Minimizer of z -> |K^z| by damped Newton with exact derivatives:
/// grad = (n+1) int w dw and Hess = (n+1)(n+2) int w w^T dw over K^z - z.
/// Starts at the vertex centroid; NonConvergence after 100 iterations.
SantaloResult santalo(const Polytope& k);
/// Same objective on the sphere quadrature, |K^z| = (1/n) int (h_K - z.u)^{-n}.
SantaloResult santalo(const StarBody& k);
Vector santalo_point(const Polytope& k);
Vector santalo_point(const StarBody& k);

struct VolumeProductResult {
  std::string body_id;
  Vector santalo_point;
  double volume = 0.0;
  double polar_volume_at_santalo = 0.0;
  double product = 0.0;
};

VolumeProductResult volume_product(const Polytope& k, const std::string& id = "");
VolumeProductResult volume_product(const StarBody& k, const std::string& id = "");
VolumeProductResult volume_product(const Body& k, const std::string& id = "");

enum class BoundKind { Symmetric, Nonsymmetric };
/// 4^n/n! or (n+1)^{n+1}/(n!)^2.
double mahler_bound(int n, BoundKind kind);

struct BoundCheck {
  std::string name;
  int index = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;
  double product = 0.0;
  double margin = 0.0;  // product - bound
  bool pass = false;
  double tolerance = 0.0;
  bool centrally_symmetric = false;
  int vertex_count = 0;
  Vector santalo_point;
};

/// Product against the bound of the group family: 4^n/n! for the diamond
/// groups, (n+1)^{n+1}/(n!)^2 for the simplex groups.
BoundCheck check_bound(const Polytope& k, const GroupSpec& spec, double tolerance = 1e-6);

/// Seeded random invariant bodies; sample i uses seed mix_seed(seed, i) and
/// 1 + i % 3 generating points. Workers split the indices; output is in index order.
std::vector<BoundCheck> verify_bound(const GroupSpec& spec, int samples, std::uint64_t seed,
                                     const Tolerances& tol = {}, int threads = 0);

/// Values of |K^z| along the segment z0 -> z1 and whether they are unimodal.
struct UnimodalityDiagnostic {
  std::vector<double> values;
  bool unimodal = false;
  double sampled_min = 0.0;
  double solver_value = 0.0;
  bool solver_is_min = false;
};
UnimodalityDiagnostic santalo_unimodality(const Polytope& k, const Vector& z0, const Vector& z1,
                                          int samples = 41);

struct FundamentalDomainResult {
  double dilation = 1.0;  // factor applied so the frame lies on the boundary
  double volume = 0.0;
  double polar_volume = 0.0;
  double piece_volume = 0.0;        // |K~|
  double polar_piece_volume = 0.0;  // |K~°|
  double ratio = 0.0;               // |K||K°| / (|K~||K~°|)
  double expected_factor = 0.0;     // (n+1)^2 or 4^n
  double deviation = 0.0;           // relative
};

/// K~ = K cap pos(frame). On the exact path K~° is K° cap pos(frame), which
/// has the volume of o*Lambda(B) because the group translates of both tile.
/// NotInvariant if K is not invariant under the group; bodies whose frame
/// points miss the boundary are dilated first.
FundamentalDomainResult fundamental_domain_product(const Polytope& k, const GroupSpec& spec);
FundamentalDomainResult fundamental_domain_product(const StarBody& k, const GroupSpec& spec);

}  // namespace volprod
