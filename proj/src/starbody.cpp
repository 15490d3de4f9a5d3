#include "volprod/starbody.hpp"

#include "volprod/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace volprod {
namespace {

double lp_norm(const Vector& x, double p) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)) / m, p);
  return m * std::pow(s, 1.0 / p);
}

std::vector<Vector> scan_directions(int dim) {
  std::vector<Vector> out;
  if (dim == 1) {
    out = {Vector::Constant(1, 1.0), Vector::Constant(1, -1.0)};
  } else if (dim == 2) {
    const int m = 720;
    for (int i = 0; i < m; ++i) {
      const double a = 2.0 * std::numbers::pi * i / m;
      Vector u(2);
      u << std::cos(a), std::sin(a);
      out.push_back(u);
    }
  } else if (dim == 3) {
    const int m = 4000;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < m; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / m;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vector u(3);
      u << r * std::cos(golden * i), r * std::sin(golden * i), z;
      out.push_back(u);
    }
  } else {
    Rng rng(0x5ca11);
    const int m = 5000 * (dim - 2);
    for (int i = 0; i < m; ++i) out.push_back(rng.unit_vector(dim));
  }
  return out;
}

// Orthonormal basis of the complement of unit u, as columns.
Matrix tangent_basis(const Vector& u) {
  const int n = static_cast<int>(u.size());
  Eigen::HouseholderQR<Matrix> qr(u);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

}  // namespace

void PerturbationProfile::prepare() {
  const std::size_t terms = group.size() * directions.size();
  if (terms == 0) return;
  rows_.resize(static_cast<Eigen::Index>(terms), directions.front().size());
  row_powers_.clear();
  row_weights_.clear();
  Eigen::Index r = 0;
  for (const auto& g : group) {
    for (std::size_t j = 0; j < directions.size(); ++j) {
      rows_.row(r++) = (g.transpose() * directions[j]).transpose();
      row_powers_.push_back(powers[j]);
      row_weights_.push_back(weights[j] / static_cast<double>(group.size()));
    }
  }
}

double PerturbationProfile::operator()(const Vector& u) const {
  if (rows_.rows() == 0) {
    double total = 0.0;
    for (const auto& g : group) {
      const Vector gu = g * u;
      for (std::size_t j = 0; j < directions.size(); ++j)
        total += weights[j] * std::pow(directions[j].dot(gu), powers[j]);
    }
    return (total / static_cast<double>(group.size()) - shift) / scale;
  }
  const Vector dots = rows_ * u;
  double total = 0.0;
  for (Eigen::Index i = 0; i < dots.size(); ++i) {
    const double d = dots(i);
    double p = d;
    for (int k = 1; k < row_powers_[static_cast<std::size_t>(i)]; ++k) p *= d;
    total += row_weights_[static_cast<std::size_t>(i)] * p;
  }
  return (total - shift) / scale;
}

StarBody StarBody::lp_ball(int dim, double p) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "dimension out of range");
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "lp_ball needs 1 < p < infinity");
  StarBody b;
  b.dim_ = dim;
  b.kind_ = StarKind::LpBall;
  b.p_ = p;
  return b;
}

StarBody StarBody::from_polytope(const Polytope& p) {
  if (!(interior_margin(p, Vector::Zero(p.dim())) > p.tolerances().tol_geom * p.scale()))
    throw Error(ErrorKind::OriginNotInterior, "polytope-backed body needs o in the interior");
  StarBody b;
  b.dim_ = p.dim();
  b.kind_ = StarKind::PolytopeBacked;
  b.tol_ = p.tolerances();
  b.polytope_ = std::make_shared<const Polytope>(p);
  return b;
}

bool StarBody::is_smooth() const {
  if (kind_ == StarKind::PolytopeBacked) return false;
  if (kind_ == StarKind::Perturbed) return base_->is_smooth();
  return true;
}

StarBody StarBody::with_tolerances(const Tolerances& tol) const {
  tol.validate();
  StarBody b = *this;
  b.tol_ = tol;
  return b;
}

double StarBody::unit_radial(const Vector& u) const {
  switch (kind_) {
    case StarKind::LpBall:
      return p_ == 2.0 ? 1.0 / u.norm() : 1.0 / lp_norm(u, p_);
    case StarKind::PolytopeBacked: {
      double r = std::numeric_limits<double>::infinity();
      for (const auto& f : polytope_->facets()) {
        const double a = f.normal.dot(u);
        if (a > 0.0) r = std::min(r, f.offset / a);
      }
      return r;
    }
    case StarKind::Perturbed:
      return base_->radial(u) * (1.0 + eps_ * (*profile_)(u));
  }
  return 0.0;
}

double StarBody::radial(const Vector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const double len = x.norm();
  if (!(len > 0.0)) throw Error(ErrorKind::ZeroVector, "radial function at the origin");
  return scale_ * unit_radial(x / len) / len;
}

double StarBody::gauge(const Vector& x) const { return 1.0 / radial(x); }

Vector StarBody::gauge_gradient(const Vector& x) const {
  if (!is_smooth()) throw Error(ErrorKind::NonSmoothKind, "gauge gradient of a non-smooth body");
  if (x.size() != dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (!(x.norm() > 0.0)) throw Error(ErrorKind::ZeroVector, "gauge gradient at the origin");
  if (kind_ == StarKind::LpBall) {
    const double norm = lp_norm(x, p_);
    Vector g(dim_);
    for (int i = 0; i < dim_; ++i) {
      const double a = std::abs(x(i)) / norm;
      g(i) = (x(i) < 0 ? -1.0 : 1.0) * std::pow(a, p_ - 1.0);
    }
    return g / scale_;
  }
  const double h = 1e-5 * x.norm();
  Vector g(dim_);
  Vector xp = x, xm = x;
  for (int i = 0; i < dim_; ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    g(i) = (gauge(xp) - gauge(xm)) / (2.0 * h);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return g;
}

Vector StarBody::lambda(const Vector& x) const {
  if (!is_smooth()) throw Error(ErrorKind::NonSmoothKind, "Lambda needs a smooth body");
  if (std::abs(gauge(x) - 1.0) > tol_.tol_quad) throw Error(ErrorKind::NotOnBoundary, "point is not on the boundary");
  return gauge_gradient(x);
}

double StarBody::support(const Vector& y) const {
  if (y.size() != dim_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const double len = y.norm();
  if (!(len > 0.0)) throw Error(ErrorKind::ZeroVector, "support function at the origin");
  if (kind_ == StarKind::LpBall) {
    const double q = p_ / (p_ - 1.0);
    return scale_ * lp_norm(y, q);
  }
  if (kind_ == StarKind::PolytopeBacked) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& v : polytope_->vertices()) h = std::max(h, v.dot(y));
    return scale_ * h;
  }
  // Boundary scan, then ascent in tangent coordinates around the best hit.
  double best = -std::numeric_limits<double>::infinity();
  const Vector* arg = nullptr;
  for (const auto& x : *scan_) {
    const double v = x.dot(y);
    if (v > best) {
      best = v;
      arg = &x;
    }
  }
  best *= scale_;
  const Vector u0 = arg->normalized();
  const Matrix basis = tangent_basis(u0);
  auto objective = [&](const Vector& c) {
    const Vector u = (u0 + basis * c).normalized();
    return -radial(u) * u.dot(y);
  };
  const double step = dim_ == 2 ? 0.01 : 0.05;
  const auto res = nelder_mead(objective, Vector::Zero(dim_ - 1), step, 1e-15, 4000);
  return std::max(best, -res.value);
}

StarBody StarBody::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(ErrorKind::InvalidArgument, "dilation must be positive");
  StarBody b = *this;
  b.scale_ *= factor;
  return b;
}

void StarBody::build_scan() {
  auto pts = std::make_shared<std::vector<Vector>>();
  for (const auto& u : scan_directions(dim_)) pts->push_back(unit_radial(u) * u);
  scan_ = pts;
}

StarBody perturbed_invariant_body(const StarBody& base, const SymmetryGroup& g, double eps,
                                  std::uint64_t seed, int convexity_pairs) {
  if (g.dim() != base.dim()) throw Error(ErrorKind::InvalidArgument, "group and body dimensions differ");
  if (!std::isfinite(eps)) throw Error(ErrorKind::InvalidArgument, "epsilon must be finite");
  if (eps == 0.0) return base;
  const int n = base.dim();
  auto profile = std::make_shared<PerturbationProfile>();
  for (const auto& e : g.elements()) profile->group.push_back(e.matrix);
  Rng rng(seed);
  const int bumps = 3;
  double total = 0.0;
  for (int j = 0; j < bumps; ++j) {
    profile->directions.push_back(rng.unit_vector(n));
    profile->powers.push_back(j == 0 ? 4 + 2 * static_cast<int>(rng.next_u64() % 2) : 3 + static_cast<int>(rng.next_u64() % 4));
    profile->weights.push_back(rng.uniform(-1.0, 1.0));
    total += std::abs(profile->weights.back());
  }
  for (auto& w : profile->weights) w /= total;
  profile->prepare();
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 4000; ++i) {
    const double f = (*profile)(rng.unit_vector(n));
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  if (hi - lo > 1e-9) {
    profile->shift = 0.5 * (hi + lo);
    profile->scale = 0.5 * (hi - lo);
  }

  StarBody b;
  b.dim_ = n;
  b.kind_ = StarKind::Perturbed;
  b.eps_ = eps;
  b.tol_ = base.tolerances();
  b.base_ = std::make_shared<const StarBody>(base);
  b.profile_ = profile;

  for (int i = 0; i < 16; ++i) {
    const Vector u = rng.unit_vector(n);
    if (!(b.unit_radial(u) > 0.0)) throw Error(ErrorKind::ConvexityLost, "perturbation makes the radial function vanish");
  }
  // Midpoint test on far and near boundary pairs.
  Rng check(mix_seed(seed, 0xc0417e));
  for (int i = 0; i < convexity_pairs; ++i) {
    const Vector u = check.unit_vector(n);
    Vector v = check.unit_vector(n);
    if (i % 2 == 1) v = (u + 0.05 * v).normalized();
    if ((u + v).norm() < 1e-6) continue;
    const Vector x = b.radial(u) * u;
    const Vector y = b.radial(v) * v;
    if (b.gauge(0.5 * (x + y)) > 1.0 + 1e-12) throw Error(ErrorKind::ConvexityLost, "sampled midpoint left the body");
  }
  b.build_scan();
  return b;
}

double volume_star(const StarBody& k) {
  const SphereQuadrature q = sphere_quadrature(k.dim(), k.tolerances());
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(k.radial(q.nodes[i]), k.dim());
  return s / k.dim();
}

std::vector<double> support_values(const StarBody& k, const SphereQuadrature& q) {
  std::vector<double> h;
  h.reserve(q.nodes.size());
  for (const auto& u : q.nodes) h.push_back(k.support(u));
  return h;
}

double polar_volume(const StarBody& k) {
  const SphereQuadrature q = sphere_quadrature(k.dim(), k.tolerances());
  const auto h = support_values(k, q);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::pow(h[i], -k.dim());
  return s / k.dim();
}

}  // namespace volprod
