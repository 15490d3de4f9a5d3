#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace volprod {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

constexpr int kMaxDim = 8;

/// Numerical tolerance profile shared by every module.
///
/// `tol_orth` gates exact-grade checks (orthogonality, group membership),
/// `tol_geom` gates polytope predicates and hull canonicalization, and
/// `tol_quad` is the accuracy target of every quadrature-based quantity.
struct Tolerances {
  double tol_orth = 1e-12;
  double tol_geom = 1e-9;
  double tol_quad = 1e-4;
  int quad_subdivisions = 6;
  int mc_samples = 200000;

  void validate() const;

  static Tolerances strict() { return {}; }
  static Tolerances fast();
  // Reads VOLPROD_TOL_PROFILE (strict|fast); strict when unset.
  static Tolerances from_environment();
};

/// Unit vectors v_1..v_{n+1} in R^n with v_i.v_j = -1/n for i != j.
///
/// The standard basis of R^{n+1} is projected off the all-ones vector and
/// expressed in a Gram-Schmidt basis of that complement started at the first
/// projected vector, so v_1 = e_1 and every later vertex has a nonnegative
/// last free coordinate. For n = 2 this yields (1,0), (-1/2, sqrt3/2),
/// (-1/2, -sqrt3/2).
std::vector<Vector> simplex_vertices(int n);

/// N with N.x = det(x, a_1, ..., a_{n-1}) for every x.
Vector generalized_cross(std::span<const Vector> args);

/// LU with partial pivoting.
double determinant(const Matrix& m);

/// Matrix whose columns are the given vectors.
Matrix column_matrix(std::span<const Vector> columns);

/// Orthonormal basis (as columns) of span(vectors); columns follow
/// Gram-Schmidt order so the first column is parallel to vectors[0].
Matrix orthonormal_basis(std::span<const Vector> vectors, double tol = 1e-12);

/// sqrt(det(A^T A)) for the columns A = [a_1..a_k]: k-volume of the parallelotope.
double parallelotope_volume(std::span<const Vector> vectors);

/// max |M^T M - I|.
double orthogonality_defect(const Matrix& m);

double factorial(int n);

/// Deterministic random source. mt19937_64 drives everything; the
/// distributions are written out so streams match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  Vector unit_vector(int dim);
  Vector gaussian_vector(int dim);
  std::uint64_t next_u64();

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Derivative-free minimization used for small local refinements.
struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f,
                             const Vector& start, double step, double ftol,
                             int max_iter);

}  // namespace volprod
