#include "hull.hpp"

#include "volprod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace volprod::detail {
namespace {

struct DegenerateFacet {};

struct HullFacet {
  std::vector<int> verts;
  std::vector<int> neighbors;  // neighbors[i] is across the ridge opposite verts[i]
  Vector normal;
  double offset = 0.0;
  std::vector<int> outside;
  int furthest = -1;
  double furthest_dist = 0.0;
  bool alive = true;
};

class Quickhull {
 public:
  Quickhull(std::span<const Vector> pts, double eps) : pts_(pts), eps_(eps) {
    dim_ = static_cast<int>(pts.front().size());
  }

  HullTriangulation run() {
    const std::vector<int> simplex = initial_simplex();
    interior_ = Vector::Zero(dim_);
    for (int i : simplex) interior_ += pts_[static_cast<std::size_t>(i)];
    interior_ /= static_cast<double>(simplex.size());

    const int d = dim_;
    for (int j = 0; j <= d; ++j) {
      HullFacet f;
      for (int k = 0; k <= d; ++k)
        if (k != j) f.verts.push_back(simplex[static_cast<std::size_t>(k)]);
      f.neighbors.assign(static_cast<std::size_t>(d), -1);
      // verts[i] of facet j is simplex vertex k (k != j); the facet opposite
      // that vertex in the simplex is facet k.
      int slot = 0;
      for (int k = 0; k <= d; ++k) {
        if (k == j) continue;
        f.neighbors[static_cast<std::size_t>(slot++)] = k;
      }
      set_plane(f);
      facets_.push_back(std::move(f));
    }

    std::vector<char> in_simplex(pts_.size(), 0);
    for (int i : simplex) in_simplex[static_cast<std::size_t>(i)] = 1;
    std::vector<int> all;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (!in_simplex[i]) all.push_back(static_cast<int>(i));
    std::vector<int> fresh;
    for (int j = 0; j <= d; ++j) fresh.push_back(j);
    assign_outside(all, fresh);

    for (;;) {
      int target = -1;
      for (std::size_t f = 0; f < facets_.size(); ++f) {
        if (facets_[f].alive && !facets_[f].outside.empty()) {
          target = static_cast<int>(f);
          break;
        }
      }
      if (target < 0) break;
      add_point(target);
    }

    HullTriangulation out;
    out.interior = interior_;
    for (const auto& f : facets_) {
      if (!f.alive) continue;
      std::vector<int> s = f.verts;
      Matrix m(d, d);
      for (int k = 0; k < d; ++k) m.col(k) = pts_[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])] - interior_;
      if (determinant(m) < 0 && d >= 2) std::swap(s[0], s[1]);
      out.simplices.push_back(std::move(s));
    }
    return out;
  }

 private:
  const Vector& P(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  std::vector<int> initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    int first = 0;
    for (int i = 1; i < n; ++i)
      if (P(i)(0) < P(first)(0)) first = i;
    std::vector<int> chosen{first};
    std::vector<Vector> basis;
    for (int k = 0; k < dim_; ++k) {
      int best = -1;
      double best_dist = -1.0;
      for (int i = 0; i < n; ++i) {
        Vector r = P(i) - P(first);
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& b : basis) r -= b.dot(r) * b;
        const double dist = r.norm();
        if (dist > best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      if (best_dist <= degenerate_eps()) {
        throw Error(ErrorKind::DegenerateInput, "points do not span a full-dimensional body");
      }
      Vector r = P(best) - P(first);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) r -= b.dot(r) * b;
      basis.push_back(r.normalized());
      chosen.push_back(best);
    }
    return chosen;
  }

  double degenerate_eps() const { return 1e3 * eps_; }

  void set_plane(HullFacet& f) const {
    const int d = dim_;
    std::vector<Vector> edges;
    double scale = 1.0;
    for (int k = 1; k < d; ++k) {
      edges.push_back(P(f.verts[static_cast<std::size_t>(k)]) - P(f.verts[0]));
      scale *= std::max(edges.back().norm(), 1e-300);
    }
    Vector normal = generalized_cross(edges);
    const double len = normal.norm();
    if (d >= 2 && !(len > 1e-11 * scale)) throw DegenerateFacet{};
    normal /= len;
    double offset = normal.dot(P(f.verts[0]));
    if (normal.dot(interior_) > offset) {
      normal = -normal;
      offset = -offset;
    }
    if (offset - normal.dot(interior_) <= 0.0) throw DegenerateFacet{};
    f.normal = std::move(normal);
    f.offset = offset;
  }

  double distance(const HullFacet& f, int i) const { return f.normal.dot(P(i)) - f.offset; }

  void assign_outside(const std::vector<int>& candidates, const std::vector<int>& targets) {
    for (int i : candidates) {
      for (int t : targets) {
        HullFacet& f = facets_[static_cast<std::size_t>(t)];
        const double dist = distance(f, i);
        if (dist > eps_) {
          f.outside.push_back(i);
          if (dist > f.furthest_dist) {
            f.furthest_dist = dist;
            f.furthest = i;
          }
          break;
        }
      }
    }
  }

  void add_point(int target) {
    const int p = facets_[static_cast<std::size_t>(target)].furthest;
    const int d = dim_;

    std::vector<int> visible{target};
    std::vector<char> is_visible(facets_.size(), 0);
    is_visible[static_cast<std::size_t>(target)] = 1;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const HullFacet& f = facets_[static_cast<std::size_t>(visible[q])];
      for (int nb : f.neighbors) {
        if (is_visible[static_cast<std::size_t>(nb)]) continue;
        if (distance(facets_[static_cast<std::size_t>(nb)], p) > eps_) {
          is_visible[static_cast<std::size_t>(nb)] = 1;
          visible.push_back(nb);
        }
      }
    }

    // New facets over the horizon ridges.
    std::vector<int> created;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int vf : visible) {
      const HullFacet old = facets_[static_cast<std::size_t>(vf)];
      for (int i = 0; i < d; ++i) {
        const int nb = old.neighbors[static_cast<std::size_t>(i)];
        if (is_visible[static_cast<std::size_t>(nb)]) continue;
        HullFacet nf;
        for (int k = 0; k < d; ++k)
          if (k != i) nf.verts.push_back(old.verts[static_cast<std::size_t>(k)]);
        nf.verts.push_back(p);
        nf.neighbors.assign(static_cast<std::size_t>(d), -1);
        nf.neighbors[static_cast<std::size_t>(d - 1)] = nb;
        set_plane(nf);
        const int id = static_cast<int>(facets_.size());
        facets_.push_back(std::move(nf));
        is_visible.push_back(0);
        HullFacet& nbf = facets_[static_cast<std::size_t>(nb)];
        for (auto& link : nbf.neighbors)
          if (link == vf) link = id;
        created.push_back(id);

        // Ridges through p, keyed by the sorted vertex set without one ridge vertex.
        const HullFacet& cur = facets_[static_cast<std::size_t>(id)];
        for (int k = 0; k < d - 1; ++k) {
          std::vector<int> key;
          for (int m = 0; m < d; ++m)
            if (m != k) key.push_back(cur.verts[static_cast<std::size_t>(m)]);
          std::sort(key.begin(), key.end());
          auto it = open_ridges.find(key);
          if (it == open_ridges.end()) {
            open_ridges.emplace(std::move(key), std::make_pair(id, k));
          } else {
            const auto [other, slot] = it->second;
            facets_[static_cast<std::size_t>(id)].neighbors[static_cast<std::size_t>(k)] = other;
            facets_[static_cast<std::size_t>(other)].neighbors[static_cast<std::size_t>(slot)] = id;
            open_ridges.erase(it);
          }
        }
      }
    }
    if (!open_ridges.empty()) throw DegenerateFacet{};

    std::vector<int> orphans;
    for (int vf : visible) {
      HullFacet& f = facets_[static_cast<std::size_t>(vf)];
      f.alive = false;
      for (int i : f.outside)
        if (i != p) orphans.push_back(i);
      f.outside.clear();
    }
    assign_outside(orphans, created);
  }

  std::span<const Vector> pts_;
  double eps_;
  int dim_ = 0;
  Vector interior_;
  std::vector<HullFacet> facets_;
};

double coordinate_scale(std::span<const Vector> points) {
  double s = 0.0;
  for (const auto& p : points) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s > 0 ? s : 1.0;
}

}  // namespace

HullTriangulation triangulated_hull(std::span<const Vector> points) {
  if (points.empty()) throw Error(ErrorKind::DegenerateInput, "no points");
  const auto dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorKind::InvalidArgument, "mixed point dimensions");
    if (!p.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
  }
  if (points.size() < static_cast<std::size_t>(dim + 1))
    throw Error(ErrorKind::DegenerateInput, "fewer than n+1 points");
  const double scale = coordinate_scale(points);
  try {
    return Quickhull(points, 1e-11 * scale).run();
  } catch (const DegenerateFacet&) {
  }
  // Jittered retry: the combinatorics come from the perturbed copy, callers
  // evaluate geometry on the original coordinates.
  for (int attempt = 0; attempt < 4; ++attempt) {
    Rng rng(mix_seed(0x5eedULL, static_cast<std::uint64_t>(attempt)));
    std::vector<Vector> jittered(points.begin(), points.end());
    for (auto& p : jittered)
      for (Eigen::Index k = 0; k < p.size(); ++k) p(k) += rng.uniform(-1.0, 1.0) * 1e-10 * scale;
    try {
      return Quickhull(jittered, 1e-14 * scale).run();
    } catch (const DegenerateFacet&) {
    }
  }
  throw Error(ErrorKind::DegenerateInput, "hull construction failed on near-degenerate input");
}

}  // namespace volprod::detail
