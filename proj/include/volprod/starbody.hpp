#pragma once

#include "volprod/geometry.hpp"
#include "volprod/polytope.hpp"
#include "volprod/quadrature.hpp"
#include "volprod/symmetry.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace volprod {

enum class StarKind { LpBall, Perturbed, PolytopeBacked };

/// Orbit-averaged polynomial bump profile f(u) = mean_g sum_j w_j (d_j . g u)^{m_j}.
struct PerturbationProfile {
  std::vector<Matrix> group;
  std::vector<Vector> directions;
  std::vector<int> powers;
  std::vector<double> weights;
  double shift = 0.0;  // (sum - shift) / scale has sampled range [-1, 1]
  double scale = 1.0;

  /// Caches (g^T d_j) as rows so one product evaluates every term.
  void prepare();
  double operator()(const Vector& u) const;

 private:
  Matrix rows_;
  std::vector<int> row_powers_;
  std::vector<double> row_weights_;
};

/// Convex body with o in its interior, given by its radial function.
class StarBody {
 public:
  /// {x : |x|_p <= 1}, 1 < p < infinity.
  static StarBody lp_ball(int dim, double p);
  static StarBody unit_ball(int dim) { return lp_ball(dim, 2.0); }
  /// Needs o strictly inside.
  static StarBody from_polytope(const Polytope& p);

  int dim() const { return dim_; }
  StarKind kind() const { return kind_; }
  bool is_smooth() const;
  double p() const { return p_; }
  double epsilon() const { return eps_; }
  /// Dilation applied on top of the defining body.
  double dilation() const { return scale_; }
  const Polytope* polytope() const { return polytope_.get(); }
  const StarBody* base() const { return base_.get(); }
  const PerturbationProfile* profile() const { return profile_.get(); }
  const Tolerances& tolerances() const { return tol_; }
  StarBody with_tolerances(const Tolerances& tol) const;

  /// rho_K(x) = max{t : t x in K}; ZeroVector at x = 0.
  double radial(const Vector& x) const;
  /// mu_K = 1 / rho_K.
  double gauge(const Vector& x) const;
  /// Gradient of the gauge at a boundary point; NotOnBoundary unless
  /// |mu(x) - 1| <= tol_quad, NonSmoothKind for polytope-backed bodies.
  Vector lambda(const Vector& x) const;
  /// Gradient of the gauge at any x != 0 (no boundary check).
  Vector gauge_gradient(const Vector& x) const;
  /// h_K(y); ZeroVector at y = 0.
  double support(const Vector& y) const;

  StarBody scaled(double factor) const;

 private:
  friend StarBody perturbed_invariant_body(const StarBody&, const SymmetryGroup&, double, std::uint64_t,
                                           int);
  int dim_ = 0;
  StarKind kind_ = StarKind::LpBall;
  double p_ = 2.0;
  double eps_ = 0.0;
  double scale_ = 1.0;
  Tolerances tol_;
  std::shared_ptr<const StarBody> base_;
  std::shared_ptr<const PerturbationProfile> profile_;
  std::shared_ptr<const Polytope> polytope_;
  std::shared_ptr<const std::vector<Vector>> scan_;  // boundary points for support search

  double unit_radial(const Vector& u) const;  // u unit, before dilation
  void build_scan();
};

/// rho(u) = rho_base(u) (1 + eps f(u)), f a G-averaged random profile.
/// ConvexityLost when sampled midpoint convexity of the gauge fails.
StarBody perturbed_invariant_body(const StarBody& base, const SymmetryGroup& g, double eps,
                                  std::uint64_t seed, int convexity_pairs = 10000);

/// (1/n) sum w rho^n over the sphere quadrature.
double volume_star(const StarBody& k);
/// (1/n) sum w h_K^{-n}.
double polar_volume(const StarBody& k);
/// h_K at every node of q.
std::vector<double> support_values(const StarBody& k, const SphereQuadrature& q);

}  // namespace volprod
