#include "volprod/symmetry.hpp"

#include "volprod/errors.hpp"
#include "volprod/starbody.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace volprod {
namespace {

std::uint64_t matrix_key(const Matrix& m) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto q = static_cast<std::int64_t>(std::llround(m.data()[i] * 1e6));
    h ^= static_cast<std::uint64_t>(q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Matrix sending v_i to v_{perm(i)}.
Matrix simplex_permutation_matrix(const std::vector<Vector>& v, const Eigen::PartialPivLU<Matrix>& base_lu,
                                  const std::vector<int>& perm) {
  const int n = static_cast<int>(v.front().size());
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) w.col(i) = v[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  // R V = W  <=>  V^T R^T = W^T
  return base_lu.solve(w.transpose()).transpose();
}

Matrix signed_permutation(const std::vector<int>& perm, unsigned signs) {
  const int n = static_cast<int>(perm.size());
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(perm[static_cast<std::size_t>(i)], i) = ((signs >> i) & 1U) ? -1.0 : 1.0;
  return m;
}

}  // namespace

std::string to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::OSimplex: return "o-simplex";
    case GroupFamily::SOSimplex: return "so-simplex";
    case GroupFamily::ODiamond: return "o-diamond";
    case GroupFamily::SODiamond: return "so-diamond";
  }
  return "";
}

GroupSpec parse_group_spec(std::string_view family, int dim) {
  GroupSpec spec;
  spec.dim = dim;
  std::string f(family);
  std::replace(f.begin(), f.end(), '_', '-');
  if (f == "o-simplex") spec.family = GroupFamily::OSimplex;
  else if (f == "so-simplex") spec.family = GroupFamily::SOSimplex;
  else if (f == "o-diamond") spec.family = GroupFamily::ODiamond;
  else if (f == "so-diamond") spec.family = GroupFamily::SODiamond;
  else throw Error(ErrorKind::InvalidArgument, "unknown group '" + std::string(family) + "'");
  if (dim < 2 || dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "group dimension must be in [2, 8]");
  return spec;
}

double group_order(const GroupSpec& spec) {
  const int n = spec.dim;
  switch (spec.family) {
    case GroupFamily::OSimplex: return factorial(n + 1);
    case GroupFamily::SOSimplex: return factorial(n + 1) / 2.0;
    case GroupFamily::ODiamond: return std::ldexp(factorial(n), n);
    case GroupFamily::SODiamond: return std::ldexp(factorial(n), n - 1);
  }
  return 0.0;
}

SymmetryGroup SymmetryGroup::generate(const GroupSpec& spec) {
  if (spec.dim < 2 || spec.dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "group dimension must be in [2, 8]");
  if (group_order(spec) > static_cast<double>(kMaxOrder))
    throw Error(ErrorKind::TooLarge, "group order exceeds the enumeration cap");
  const int n = spec.dim;
  const bool rotations = spec.is_rotation_only();
  SymmetryGroup g;
  g.spec_ = spec;

  if (spec.is_simplex()) {
    const auto v = simplex_vertices(n);
    Matrix base(n, n);
    for (int i = 0; i < n; ++i) base.col(i) = v[static_cast<std::size_t>(i)];
    const Eigen::PartialPivLU<Matrix> lu(base.transpose());
    std::vector<int> perm(static_cast<std::size_t>(n + 1));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const int sign = permutation_sign(perm);
      if (rotations && sign < 0) continue;
      g.elements_.push_back({simplex_permutation_matrix(v, lu, perm), sign});
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto by_perm = [&](const std::vector<int>& p) { return simplex_permutation_matrix(v, lu, p); };
    std::vector<int> p(static_cast<std::size_t>(n + 1));
    if (rotations) {
      // 3-cycles (1 2 k) generate the alternating group.
      for (int k = 2; k <= n; ++k) {
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1;
        p[1] = k;
        p[static_cast<std::size_t>(k)] = 0;
        g.generators_.push_back(by_perm(p));
      }
    } else {
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[0], p[1]);
      g.generators_.push_back(by_perm(p));
      for (int i = 0; i <= n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % (n + 1);
      g.generators_.push_back(by_perm(p));
    }
  } else {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const int psign = permutation_sign(perm);
      for (unsigned s = 0; s < (1U << n); ++s) {
        const int det = psign * ((std::popcount(s) % 2) ? -1 : 1);
        if (rotations && det < 0) continue;
        g.elements_.push_back({signed_permutation(perm, s), det});
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (rotations) {
      // Quarter turns e_1 -> -e_i, e_i -> e_1.
      for (int i = 1; i < n; ++i) {
        Matrix r = Matrix::Identity(n, n);
        r(0, 0) = 0.0;
        r(i, i) = 0.0;
        r(0, i) = 1.0;
        r(i, 0) = -1.0;
        g.generators_.push_back(r);
      }
    } else {
      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[0], p[1]);
      g.generators_.push_back(signed_permutation(p, 0));
      for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % n;
      g.generators_.push_back(signed_permutation(p, 0));
      std::iota(p.begin(), p.end(), 0);
      g.generators_.push_back(signed_permutation(p, 1U));
    }
  }
  g.index();
  return g;
}

void SymmetryGroup::index() {
  lookup_.clear();
  lookup_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) lookup_.emplace(matrix_key(elements_[i].matrix), static_cast<int>(i));
}

int SymmetryGroup::find(const Matrix& m) const {
  if (m.rows() != spec_.dim || m.cols() != spec_.dim) return -1;
  auto [lo, hi] = lookup_.equal_range(matrix_key(m));
  for (auto it = lo; it != hi; ++it)
    if ((elements_[static_cast<std::size_t>(it->second)].matrix - m).cwiseAbs().maxCoeff() <= 1e-6) return it->second;
  // Rounding can straddle a grid boundary; fall back to a scan.
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if ((elements_[i].matrix - m).cwiseAbs().maxCoeff() <= 1e-6) return static_cast<int>(i);
  return -1;
}

std::vector<Vector> SymmetryGroup::frame() const {
  const int n = spec_.dim;
  if (spec_.is_simplex()) {
    auto v = simplex_vertices(n);
    v.pop_back();
    return v;
  }
  std::vector<Vector> e;
  for (int i = 0; i < n; ++i) e.push_back(Vector::Unit(n, i));
  return e;
}

InvarianceResult is_invariant(const Polytope& k, const SymmetryGroup& g) {
  if (k.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  double residual = 0.0;
  for (const auto& m : g.generators()) {
    std::vector<Vector> image;
    for (const auto& v : k.vertices()) image.push_back(m * v);
    residual = std::max(residual, hausdorff_distance(k.vertices(), image));
  }
  return {residual <= k.tolerances().tol_geom * k.scale(), residual};
}

InvarianceResult is_invariant(const StarBody& k, const SymmetryGroup& g, int samples, std::uint64_t seed) {
  if (k.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  Rng rng(seed);
  double residual = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector u = rng.unit_vector(k.dim());
    const double r = k.radial(u);
    for (const auto& m : g.generators()) residual = std::max(residual, std::abs(k.radial(m * u) - r));
  }
  return {residual <= k.tolerances().tol_geom, residual};
}

double central_symmetry_residual(const Polytope& k) {
  std::vector<Vector> neg;
  for (const auto& v : k.vertices()) neg.push_back(-v);
  return hausdorff_distance(k.vertices(), neg);
}

double central_symmetry_residual(const StarBody& k, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double residual = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector u = rng.unit_vector(k.dim());
    residual = std::max(residual, std::abs(k.radial(u) - k.radial(-u)));
  }
  return residual;
}

bool is_centrally_symmetric(const Polytope& k) {
  return central_symmetry_residual(k) <= k.tolerances().tol_geom * k.scale();
}

bool is_centrally_symmetric(const StarBody& k) {
  if (k.kind() == StarKind::PolytopeBacked) return is_centrally_symmetric(*k.polytope());
  return central_symmetry_residual(k) <= k.tolerances().tol_geom;
}

Polytope orbit_hull(std::span<const Vector> points, const SymmetryGroup& g, const Tolerances& tol) {
  std::vector<Vector> orbit;
  for (const auto& p : points) {
    if (p.size() != g.dim()) throw Error(ErrorKind::InvalidArgument, "point dimension differs from the group");
    for (const auto& e : g.elements()) orbit.push_back(e.matrix * p);
  }
  return Polytope::from_points(orbit, tol);
}

Polytope random_invariant_body(const SymmetryGroup& g, std::uint64_t seed, int generators_count,
                               const Tolerances& tol) {
  if (generators_count < 1) throw Error(ErrorKind::InvalidArgument, "generators_count must be at least 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Vector> pts;
    for (int i = 0; i < generators_count; ++i) pts.push_back(rng.uniform(0.5, 1.5) * rng.unit_vector(g.dim()));
    try {
      return orbit_hull(pts, g, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInput) throw;
    }
  }
  throw Error(ErrorKind::DegenerateInput, "no full-dimensional orbit hull after 10 draws");
}

Polytope random_invariant_body(const GroupSpec& spec, std::uint64_t seed, int generators_count,
                               const Tolerances& tol) {
  return random_invariant_body(SymmetryGroup::generate(spec), seed, generators_count, tol);
}

double check_equivariance(const StarBody& k, const SymmetryGroup& g, int samples, std::uint64_t seed) {
  if (!k.is_smooth()) throw Error(ErrorKind::NonSmoothKind, "equivariance needs Lambda");
  if (k.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  Rng rng(seed);
  double residual = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector u = rng.unit_vector(k.dim());
    const Vector x = k.radial(u) * u;
    const Vector lx = k.lambda(x);
    for (const auto& e : g.elements())
      residual = std::max(residual, (e.matrix * lx - k.lambda(e.matrix * x)).norm());
  }
  return residual;
}

}  // namespace volprod
