#include "volprod/quadrature.hpp"

#include "volprod/errors.hpp"

#include <cmath>
#include <numbers>

namespace volprod {

GaussRule gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre needs at least one point");
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(m));
  r.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(m - 1 - i)] = x;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  if (m % 2 == 1) r.nodes[static_cast<std::size_t>(m / 2)] = 0.0;
  return r;
}

GaussRule composite_gauss(double lo, double hi, int panels, int points) {
  const GaussRule g = gauss_legendre(points);
  GaussRule r;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      r.nodes.push_back(a + 0.5 * h * (g.nodes[i] + 1.0));
      r.weights.push_back(0.5 * h * g.weights[i]);
    }
  }
  return r;
}

double sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

SphereQuadrature sphere_quadrature(int dim, const Tolerances& tol, std::uint64_t seed) {
  tol.validate();
  SphereQuadrature q;
  const int per_panel = 4 * tol.quad_subdivisions;
  const double pi = std::numbers::pi;
  if (dim == 1) {
    q.nodes = {Vector::Constant(1, 1.0), Vector::Constant(1, -1.0)};
    q.weights = {1.0, 1.0};
  } else if (dim == 2) {
    const GaussRule phi = composite_gauss(0.0, 2.0 * pi, 8, per_panel);
    for (std::size_t i = 0; i < phi.nodes.size(); ++i) {
      Vector u(2);
      u << std::cos(phi.nodes[i]), std::sin(phi.nodes[i]);
      q.nodes.push_back(u);
      q.weights.push_back(phi.weights[i]);
    }
  } else if (dim == 3) {
    const GaussRule z = composite_gauss(-1.0, 1.0, 2, per_panel);
    const GaussRule phi = composite_gauss(0.0, 2.0 * pi, 8, per_panel);
    for (std::size_t i = 0; i < z.nodes.size(); ++i) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z.nodes[i] * z.nodes[i]));
      for (std::size_t j = 0; j < phi.nodes.size(); ++j) {
        Vector u(3);
        u << s * std::cos(phi.nodes[j]), s * std::sin(phi.nodes[j]), z.nodes[i];
        q.nodes.push_back(u);
        q.weights.push_back(z.weights[i] * phi.weights[j]);
      }
    }
  } else {
    Rng rng(seed);
    const int pairs = std::max(1, tol.mc_samples / 2);
    const double w = sphere_area(dim) / (2.0 * pairs);
    for (int i = 0; i < pairs; ++i) {
      const Vector u = rng.unit_vector(dim);
      q.nodes.push_back(u);
      q.nodes.push_back(-u);
      q.weights.push_back(w);
      q.weights.push_back(w);
    }
  }
  return q;
}

SimplexRule simplex_rule(int d, int level) {
  if (d < 0 || level < 0) throw Error(ErrorKind::InvalidArgument, "bad simplex rule request");
  SimplexRule r;
  if (d == 0) {
    r.nodes.push_back(Vector(0));
    r.weights.push_back(1.0);
    return r;
  }
  const int shift = 2 * (d - 1);
  const int panels = std::max(1, (1 << level) >> std::min(shift, level));
  const GaussRule g = composite_gauss(0.0, 1.0, panels, 4);
  const std::size_t m = g.nodes.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    Vector t(d);
    double remaining = 1.0;
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      const double u = g.nodes[idx[static_cast<std::size_t>(i)]];
      t(i) = remaining * u;
      w *= g.weights[idx[static_cast<std::size_t>(i)]] * remaining;
      remaining *= (1.0 - u);
    }
    r.nodes.push_back(t);
    r.weights.push_back(w);
    int k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return r;
}

}  // namespace volprod
