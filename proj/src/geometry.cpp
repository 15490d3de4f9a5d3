#include "volprod/geometry.hpp"

#include "volprod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace volprod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::CenterNotInterior: return "CenterNotInterior";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::NonSmoothKind: return "NonSmoothKind";
    case ErrorKind::ConvexityLost: return "ConvexityLost";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ScalingRequired: return "ScalingRequired";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DependentVectors: return "DependentVectors";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case ErrorKind::HypothesisNotCovered: return "HypothesisNotCovered";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(tol_orth > 0 && tol_geom > 0 && tol_quad > 0) || quad_subdivisions < 1 ||
      mc_samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
}

Tolerances Tolerances::fast() {
  Tolerances t;
  t.tol_quad = 1e-3;
  t.quad_subdivisions = 4;
  t.mc_samples = 20000;
  return t;
}

Tolerances Tolerances::from_environment() {
  const char* profile = std::getenv("VOLPROD_TOL_PROFILE");
  if (profile == nullptr || std::string(profile).empty() ||
      std::string(profile) == "strict") {
    return strict();
  }
  if (std::string(profile) == "fast") return fast();
  throw Error(ErrorKind::InvalidArgument,
              "VOLPROD_TOL_PROFILE must be strict or fast, got '" + std::string(profile) + "'");
}

std::vector<Vector> simplex_vertices(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "simplex_vertices needs n >= 1");
  const int m = n + 1;
  // Projections of e_1..e_{n+1} off the all-ones direction, rescaled to unit length.
  std::vector<Vector> projected;
  projected.reserve(m);
  const double scale = std::sqrt(static_cast<double>(m) / n);
  for (int i = 0; i < m; ++i) {
    Vector w = Vector::Constant(m, -1.0 / m);
    w(i) += 1.0;
    projected.push_back(w * scale);
  }
  // Orthonormal basis of the complement from the first n projected vectors.
  std::vector<Vector> basis;
  for (int i = 0; i < n; ++i) {
    Vector b = projected[i];
    for (const auto& q : basis) b -= q.dot(b) * q;
    basis.push_back(b.normalized());
  }
  std::vector<Vector> out;
  out.reserve(m);
  for (const auto& w : projected) {
    Vector v(n);
    for (int j = 0; j < n; ++j) v(j) = basis[j].dot(w);
    out.push_back(v);
  }
  return out;
}

Matrix column_matrix(std::span<const Vector> columns) {
  if (columns.empty()) return Matrix();
  Matrix m(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = columns[j];
  return m;
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

Vector generalized_cross(std::span<const Vector> args) {
  const auto n = static_cast<Eigen::Index>(args.size()) + 1;
  for (const auto& a : args) {
    if (a.size() != n) throw Error(ErrorKind::InvalidArgument, "generalized_cross needs n-1 vectors in R^n");
  }
  if (n == 1) return Vector::Ones(1);
  Matrix m(n, n);
  for (Eigen::Index j = 1; j < n; ++j) m.col(j) = args[static_cast<std::size_t>(j - 1)];
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.col(0).setZero();
    m(i, 0) = 1.0;
    out(i) = determinant(m);
  }
  return out;
}

Matrix orthonormal_basis(std::span<const Vector> vectors, double tol) {
  std::vector<Vector> basis;
  for (const auto& v : vectors) {
    Vector b = v;
    // Two passes keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) b -= q.dot(b) * q;
    const double norm = b.norm();
    if (norm > tol * std::max(1.0, v.norm())) basis.push_back(b / norm);
  }
  return column_matrix(basis);
}

double parallelotope_volume(std::span<const Vector> vectors) {
  if (vectors.empty()) return 1.0;
  const Matrix a = column_matrix(vectors);
  const double gram = determinant(a.transpose() * a);
  return std::sqrt(std::max(gram, 0.0));
}

double orthogonality_defect(const Matrix& m) {
  return (m.transpose() * m - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::gaussian_vector(int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = normal();
  return v;
}

Vector Rng::unit_vector(int dim) {
  for (;;) {
    Vector v = gaussian_vector(dim);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f,
                             const Vector& start, double step, double ftol,
                             int max_iter) {
  const auto n = start.size();
  std::vector<Vector> pts(static_cast<std::size_t>(n + 1), start);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)](i) += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  NelderMeadResult result;
  std::vector<std::size_t> order(pts.size());
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    double spread = 0.0;
    for (const auto& p : pts) spread = std::max(spread, (p - pts[best]).cwiseAbs().maxCoeff());
    if (std::abs(vals[worst] - vals[best]) <= ftol * (std::abs(vals[best]) + ftol) && spread < 1e-9) {
      result.converged = true;
      break;
    }
    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Vector reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                      : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  result.x = pts[static_cast<std::size_t>(it - vals.begin())];
  result.value = *it;
  result.iterations = iter;
  if (!result.converged && iter < max_iter) result.converged = true;
  return result;
}

}  // namespace volprod
