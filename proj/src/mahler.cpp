#include "volprod/mahler.hpp"

#include "volprod/errors.hpp"
#include "volprod/quadrature.hpp"
#include "volprod/signed_volume.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

namespace volprod {
namespace {

struct Derivatives {
  double value;
  Vector gradient;
  Matrix hessian;
};

SantaloResult newton(const Vector& start, double scale,
                     const std::function<bool(const Vector&)>& feasible,
                     const std::function<double(const Vector&)>& value,
                     const std::function<Derivatives(const Vector&)>& derivatives) {
  Vector z = start;
  for (int it = 1; it <= 100; ++it) {
    const Derivatives d = derivatives(z);
    const Vector step = -d.hessian.ldlt().solve(d.gradient);
    if (!step.allFinite()) throw Error(ErrorKind::NonConvergence, "singular Hessian in the Santalo search");
    double t = 1.0;
    const double slope = d.gradient.dot(step);
    const bool tiny = step.norm() <= 1e-6 * scale;
    for (int k = 0; k < 80; ++k) {
      const Vector trial = z + t * step;
      if (feasible(trial) && (tiny || value(trial) <= d.value + 1e-4 * t * slope)) break;
      t *= 0.5;
    }
    const Vector next = z + t * step;
    if (!feasible(next)) throw Error(ErrorKind::NonConvergence, "line search could not stay inside the body");
    const double moved = (next - z).norm();
    z = next;
    if (moved <= 1e-12 * scale) {
      SantaloResult r;
      r.point = z;
      r.polar_volume = value(z);
      r.iterations = it;
      r.gradient_norm = derivatives(z).gradient.norm();
      return r;
    }
  }
  throw Error(ErrorKind::NonConvergence, "Santalo search hit the iteration cap");
}

}  // namespace

SantaloResult santalo(const Polytope& k) {
  const Vector c = k.vertex_centroid();
  const PolarVolumeEvaluator eval(k, c);
  const int n = k.dim();
  return newton(
      c, k.scale(), [&](const Vector& z) { return eval.margin(z) > 0.0; },
      [&](const Vector& z) { return eval.volume(z); },
      [&](const Vector& z) {
        const auto m = eval.moments(z);
        return Derivatives{m.volume, (n + 1.0) * m.first, (n + 1.0) * (n + 2.0) * m.second};
      });
}

SantaloResult santalo(const StarBody& k) {
  const int n = k.dim();
  const SphereQuadrature q = sphere_quadrature(n, k.tolerances());
  const std::vector<double> h = support_values(k, q);
  const std::size_t m = q.nodes.size();
  auto feasible = [&](const Vector& z) {
    for (std::size_t i = 0; i < m; ++i)
      if (!(h[i] - q.nodes[i].dot(z) > 0.0)) return false;
    return true;
  };
  auto value = [&](const Vector& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += q.weights[i] * std::pow(h[i] - q.nodes[i].dot(z), -n);
    return s / n;
  };
  auto derivatives = [&](const Vector& z) {
    Derivatives d{0.0, Vector::Zero(n), Matrix::Zero(n, n)};
    for (std::size_t i = 0; i < m; ++i) {
      const double gap = h[i] - q.nodes[i].dot(z);
      const double base = q.weights[i] * std::pow(gap, -n);
      d.value += base / n;
      d.gradient += base / gap * q.nodes[i];
      d.hessian += (n + 1.0) * base / (gap * gap) * q.nodes[i] * q.nodes[i].transpose();
    }
    return d;
  };
  double scale = 0.0;
  for (double v : h) scale = std::max(scale, v);
  return newton(Vector::Zero(n), scale, feasible, value, derivatives);
}

Vector santalo_point(const Polytope& k) { return santalo(k).point; }
Vector santalo_point(const StarBody& k) { return santalo(k).point; }

VolumeProductResult volume_product(const Polytope& k, const std::string& id) {
  const SantaloResult s = santalo(k);
  VolumeProductResult r;
  r.body_id = id;
  r.santalo_point = s.point;
  r.volume = volume(k);
  r.polar_volume_at_santalo = s.polar_volume;
  r.product = r.volume * r.polar_volume_at_santalo;
  return r;
}

VolumeProductResult volume_product(const StarBody& k, const std::string& id) {
  const SantaloResult s = santalo(k);
  VolumeProductResult r;
  r.body_id = id;
  r.santalo_point = s.point;
  r.volume = volume_star(k);
  r.polar_volume_at_santalo = s.polar_volume;
  r.product = r.volume * r.polar_volume_at_santalo;
  return r;
}

VolumeProductResult volume_product(const Body& k, const std::string& id) {
  return std::visit([&](const auto& b) { return volume_product(b, id); }, k);
}

double mahler_bound(int n, BoundKind kind) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const double f = factorial(n);
  if (kind == BoundKind::Symmetric) return std::pow(4.0, n) / f;
  return std::pow(n + 1.0, n + 1) / (f * f);
}

BoundCheck check_bound(const Polytope& k, const GroupSpec& spec, double tolerance) {
  if (k.dim() != spec.dim) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (!is_invariant(k, SymmetryGroup::generate(spec)).invariant)
    throw Error(ErrorKind::NotInvariant, "body is not invariant under the group");
  const auto vp = volume_product(k);
  BoundCheck c;
  c.bound = mahler_bound(k.dim(), spec.is_simplex() ? BoundKind::Nonsymmetric : BoundKind::Symmetric);
  c.product = vp.product;
  c.margin = c.product - c.bound;
  c.tolerance = tolerance;
  c.pass = c.margin >= -tolerance;
  c.centrally_symmetric = is_centrally_symmetric(k);
  c.vertex_count = static_cast<int>(k.vertices().size());
  c.santalo_point = vp.santalo_point;
  return c;
}

std::vector<BoundCheck> verify_bound(const GroupSpec& spec, int samples, std::uint64_t seed,
                                     const Tolerances& tol, int threads) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  const SymmetryGroup group = SymmetryGroup::generate(spec);
  std::vector<BoundCheck> out(static_cast<std::size_t>(samples));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= samples) return;
      try {
        const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(i));
        const Polytope body = random_invariant_body(group, s, 1 + i % 3, tol);
        BoundCheck c = check_bound(body, spec);
        c.name = "sample-" + std::to_string(i);
        c.index = i;
        c.seed = s;
        out[static_cast<std::size_t>(i)] = std::move(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = samples;
        return;
      }
    }
  };
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, samples));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

UnimodalityDiagnostic santalo_unimodality(const Polytope& k, const Vector& z0, const Vector& z1, int samples) {
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 samples");
  const PolarVolumeEvaluator eval(k, k.vertex_centroid());
  UnimodalityDiagnostic d;
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    const Vector z = (1.0 - t) * z0 + t * z1;
    if (!(eval.margin(z) > 0.0)) throw Error(ErrorKind::CenterNotInterior, "segment leaves the interior");
    d.values.push_back(eval.volume(z));
  }
  std::size_t arg = 0;
  for (std::size_t i = 1; i < d.values.size(); ++i)
    if (d.values[i] < d.values[arg]) arg = i;
  d.sampled_min = d.values[arg];
  const double slack = 1e-12 * d.sampled_min;
  d.unimodal = true;
  for (std::size_t i = 1; i <= arg; ++i)
    if (d.values[i] > d.values[i - 1] + slack) d.unimodal = false;
  for (std::size_t i = arg + 1; i < d.values.size(); ++i)
    if (d.values[i] < d.values[i - 1] - slack) d.unimodal = false;
  d.solver_value = santalo(k).polar_volume;
  d.solver_is_min = d.solver_value <= d.sampled_min * (1.0 + 1e-12);
  return d;
}

namespace {

std::vector<Halfspace> cone_halfspaces(const std::vector<Vector>& frame) {
  const Matrix inv = column_matrix(frame).inverse();
  std::vector<Halfspace> hs;
  for (Eigen::Index i = 0; i < inv.rows(); ++i) hs.push_back({-inv.row(i).transpose(), 0.0});
  return hs;
}

Polytope cone_piece(const Polytope& p, const std::vector<Vector>& frame) {
  auto hs = p.halfspaces();
  const auto cone = cone_halfspaces(frame);
  hs.insert(hs.end(), cone.begin(), cone.end());
  Vector dir = Vector::Zero(p.dim());
  for (const auto& a : frame) dir += a;
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets()) {
    const double a = f.normal.dot(dir);
    if (a > 0.0) r = std::min(r, f.offset / a);
  }
  return Polytope::from_halfspaces(hs, p.tolerances(), Vector(0.5 * r * dir / static_cast<double>(frame.size())));
}

double expected_factor(const GroupSpec& spec) {
  return spec.is_simplex() ? (spec.dim + 1.0) * (spec.dim + 1.0) : std::pow(4.0, spec.dim);
}

}  // namespace

FundamentalDomainResult fundamental_domain_product(const Polytope& k0, const GroupSpec& spec) {
  if (k0.dim() != spec.dim) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const SymmetryGroup g = SymmetryGroup::generate(spec);
  if (!is_invariant(k0, g).invariant) throw Error(ErrorKind::NotInvariant, "body is not invariant under the group");
  const auto frame = g.frame();
  double mu = 0.0;
  for (const auto& f : k0.facets()) mu = std::max(mu, f.normal.dot(frame.front()) / f.offset);
  FundamentalDomainResult r;
  r.dilation = std::abs(mu - 1.0) > k0.tolerances().tol_geom ? mu : 1.0;
  const Polytope k = r.dilation == 1.0 ? k0 : k0.scaled(r.dilation);
  const Polytope polar = polar_dual(k);
  r.volume = volume(k);
  r.polar_volume = volume(polar);
  r.piece_volume = volume(cone_piece(k, frame));
  r.polar_piece_volume = volume(cone_piece(polar, frame));
  r.ratio = r.volume * r.polar_volume / (r.piece_volume * r.polar_piece_volume);
  r.expected_factor = expected_factor(spec);
  r.deviation = std::abs(r.ratio - r.expected_factor) / r.expected_factor;
  return r;
}

FundamentalDomainResult fundamental_domain_product(const StarBody& k0, const GroupSpec& spec) {
  if (k0.dim() != spec.dim) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const SymmetryGroup g = SymmetryGroup::generate(spec);
  if (!is_invariant(k0, g).invariant) throw Error(ErrorKind::NotInvariant, "body is not invariant under the group");
  const auto frame = g.frame();
  const double rho = k0.radial(frame.front());
  FundamentalDomainResult r;
  r.dilation = std::abs(rho - 1.0) > k0.tolerances().tol_geom ? 1.0 / rho : 1.0;
  const StarBody k = r.dilation == 1.0 ? k0 : k0.scaled(r.dilation);
  r.volume = volume_star(k);
  r.polar_volume = polar_volume(k);
  r.piece_volume = cone_volume(k, frame);
  r.polar_piece_volume = polar_cone_volume(k, frame);
  r.ratio = r.volume * r.polar_volume / (r.piece_volume * r.polar_piece_volume);
  r.expected_factor = expected_factor(spec);
  r.deviation = std::abs(r.ratio - r.expected_factor) / r.expected_factor;
  return r;
}

}  // namespace volprod
