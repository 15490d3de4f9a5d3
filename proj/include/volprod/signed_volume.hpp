#pragma once

#include "volprod/geometry.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"

#include <array>
#include <span>
#include <vector>

namespace volprod {

/// Radial graph {rho_K(x) x : x in conv{a_1..a_k}}.
struct Patch {
  StarBody body;
  std::vector<Vector> spanning;
  int orientation = 1;
};

/// The vector C with C.x = (1/(n-1)) int det(x, r, dr/dt_1, ..., dr/dt_{n-2}) dt
/// over a parametrization r of the patch.
struct PatchVector {
  Vector vector;
  Patch patch;
  double error_estimate = 0.0;  // difference to the next coarser rule
};

/// With s(t) = a_1 + sum t_i (a_{i+1} - a_1) over the standard simplex D:
/// C = (1/(n-1)) (int_D rho^{n-1}(s(t)) dt) N, N.x = det(x, a_1, ..., a_{n-1}).
/// DependentVectors unless the a_i are independent.
PatchVector patch_vector(const StarBody& k, std::span<const Vector> a);

/// Same functional on the image surface Lambda(patch), with parameter
/// derivatives by central differences.
PatchVector lambda_patch_vector(const StarBody& k, std::span<const Vector> a);

/// |o*C(a_1..a_k)|_k = (1/k) int rho^k(s(t)) dt sqrt(det Gram(a)); k = 1 gives rho(a_1)|a_1|.
double cone_volume(const StarBody& k, std::span<const Vector> a);
/// Same cone in K°, using rho_{K°} = 1/h_K.
double polar_cone_volume(const StarBody& k, std::span<const Vector> a);
/// |o*pi_H Lambda(C(a_1..a_k))|_k with H = span{a_i}.
double lambda_cone_volume(const StarBody& k, std::span<const Vector> a);

struct SignedEstimate {
  double lhs = 0.0;  // (sum (-1)^{i-1} C_i) . x / n
  double rhs = 0.0;  // |o*B|
  bool pass = false;
  std::vector<Vector> face_vectors;
};

/// PointOutside unless x is in K.
SignedEstimate signed_estimate_check(const StarBody& k, std::span<const Vector> spanning, const Vector& x);

struct DualityIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  Vector patch;
  Vector image_patch;
  double cone = 0.0;
  double polar_cone = 0.0;
};

/// lhs = C . Lambda(C)-vector. rhs = |o*C|_{n-1} |o*pi_H Lambda(C)|_{n-1}; for n = 3
/// the second factor is (1/2) int h_L^{-2} dtheta over the normal angles of the
/// section L = K cap H, for other n the projected image cone is integrated.
DualityIdentity duality_identity(const StarBody& k, std::span<const Vector> a);

/// (1 - alpha) / (k (1 + (k - 2) alpha)).
double bf_factor(double alpha, int k);

struct BfResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double factor = 0.0;
  bool pass = false;
  std::array<double, 3> hypothesis_residuals{};
};

/// Uses a_1..a_k of `frame`. Hypotheses (equal sub-cone volumes, Lambda images
/// inside the sub-spans, equal image volumes) are checked at 10 tol_quad;
/// HypothesisViolated carries the failing index (1, 2 or 3).
BfResult bf_inequality(const StarBody& k, double alpha, int level, std::span<const Vector> frame);

struct IkChain {
  double dilation = 1.0;
  double alpha = 0.0;
  std::vector<double> values;       // I_1 .. I_{n-1}
  std::vector<double> factors;      // factor at k = 2 .. n-1
  std::vector<bool> step_passes;    // I_k >= factor I_{k-1}
  double chained_bound = 0.0;       // I_1 times the product of the factors
  double chain_end = 0.0;           // closed form with I_1 = 1
  double product_lower_bound = 0.0; // implied bound on |K||K°|
  bool pass = false;
};

/// Closed-form end of the chain: 2n(n+1)^{n-2}/(n!)^2 (simplex), 1/(n-1)! (diamond).
double ik_chain_end(int n, GroupFamily family);

/// Dilates K so the frame lies on the boundary, then runs bf_inequality for k = 2..n-1.
IkChain ik_chain(const StarBody& k, const GroupSpec& spec);

}  // namespace volprod
