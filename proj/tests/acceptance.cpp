// One line per acceptance criterion; exit status is the number of failures.
#include "fixtures.hpp"
#include "volprod/cli/commands.hpp"
#include "volprod/errors.hpp"
#include "volprod/mahler.hpp"
#include "volprod/signed_volume.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"
#include "volprod/symplectic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace volprod;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  bool pass = true;
  double worst = 0.0;
  int count = 0;
  void add(bool ok, double err = 0.0) {
    pass = pass && ok;
    worst = std::max(worst, err);
    ++count;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

StarBody perturbed(GroupFamily fam, std::uint64_t seed, double eps = 0.03) {
  return perturbed_invariant_body(StarBody::unit_ball(3), SymmetryGroup::generate({fam, 3}), eps, seed);
}

Outcome equality_cases() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  for (int n = 2; n <= 5; ++n) {
    const double f = fixtures::exact_factorial(n);
    const double c = volume_product(fixtures::cube(n)).product;
    const double s = volume_product(fixtures::simplex(n)).product;
    const double ec = rel(c, std::pow(4.0, n) / f);
    const double es = rel(s, std::pow(n + 1.0, n + 1) / (f * f));
    t.add(ec <= 1e-9, ec);
    t.add(es <= 1e-9, es);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {t.pass && secs < 10.0, fmt("max rel err %.2e, %.2f s", t.worst, secs)};
}

std::vector<BoundCheck> diamond_checks;

Outcome harness(GroupFamily fam, double bound) {
  const auto start = std::chrono::steady_clock::now();
  const auto checks = verify_bound({fam, 3}, 200, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Tally t;
  double min_margin = 1e300;
  for (const auto& c : checks) {
    t.add(c.product >= bound - 1e-6 && std::abs(c.bound - bound) < 1e-12);
    min_margin = std::min(min_margin, c.product - bound);
  }
  if (fam == GroupFamily::SODiamond) diamond_checks = checks;
  return {t.pass && t.count == 200 && secs < 120.0, fmt("200 bodies, min margin %.3e, %.2f s", min_margin, secs)};
}

Outcome odd_nonsymmetry() {
  int asym = 0;
  bool all_pass = !diamond_checks.empty();
  for (const auto& c : diamond_checks) {
    all_pass = all_pass && c.margin >= -1e-6;
    if (!c.centrally_symmetric) ++asym;
  }
  return {asym > 0 && all_pass, fmt("%.0f of %.0f bodies not centrally symmetric", asym, diamond_checks.size())};
}

Outcome santalo_points() {
  Rng rng(505);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const double z = santalo_point(fixtures::random_symmetric(3, 4 + i % 6, rng)).norm();
    t.add(z <= 1e-7, z);
  }
  for (int i = 0; i < 20; ++i) {
    auto k = fixtures::random_polytope(3, 4, rng);
    k = k.translated(-k.vertex_centroid());
    const double z = santalo_point(k).norm();
    t.add(z <= 1e-7, z);
  }
  return {t.pass, fmt("max |z| %.2e over %.0f bodies", t.worst, t.count)};
}

Outcome affine_invariance() {
  Rng rng(606);
  Tally t;
  const auto cube = fixtures::cube(3);
  while (t.count < 20) {
    Matrix a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = rng.normal();
    const Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s(2) <= 0 || s(0) / s(2) > 50) continue;
    const double e = rel(volume_product(cube.transformed(a, rng.gaussian_vector(3))).product, 32.0 / 3.0);
    t.add(e <= 1e-6, e);
  }
  return {t.pass, fmt("max rel err %.2e", t.worst)};
}

Outcome capacity() {
  Rng rng(707);
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    const auto k = fixtures::random_symmetric(n, n + 1 + i % 5, rng);
    const double e = std::abs(chz_lagrangian(k, polar_dual(k)).c_hz - 4.0);
    t.add(e <= 1e-9, e);
  }
  const double cap_err = t.worst;
  for (int n = 2; n <= 5; ++n) {
    const auto c = viterbo_check(fixtures::cube(n), fixtures::cross(n));
    const double e = std::max(rel(c.viterbo_lhs, std::pow(4.0, n)), rel(c.viterbo_rhs, std::pow(4.0, n)));
    t.add(e <= 1e-9, e);
  }
  return {t.pass, fmt("|c - 4| max %.2e, viterbo rel err max %.2e", cap_err, t.worst)};
}

Outcome patch_vector_ball() {
  const auto ball = StarBody::unit_ball(3);
  const Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1), e3 = Vector::Unit(3, 2);
  const std::vector<Vector> a{e2, e3};
  const std::vector<Vector> b{e3, e2};
  const Vector c = patch_vector(ball, a).vector;
  const Vector d = patch_vector(ball, b).vector;
  // (1/2) int_0^1 dt / (2t^2 - 2t + 1)
  const double oracle = 0.5 * (std::atan(1.0) - std::atan(-1.0));
  const double err = (c - oracle * e1).norm();
  const double orth = std::max(std::abs(c.dot(e2)), std::abs(c.dot(e3)));
  const bool sign = (c + d).norm() == 0.0;
  return {err <= 1e-4 && orth <= 1e-8 && sign,
          fmt("err %.2e, orthogonality %.2e, sign rule %s", err, orth) + (sign ? "exact" : "broken")};
}

Outcome signed_estimate() {
  Tally t;
  double worst = -1e300;
  const GroupFamily fams[] = {GroupFamily::ODiamond, GroupFamily::SODiamond, GroupFamily::OSimplex, GroupFamily::SOSimplex};
  for (int i = 0; i < 50; ++i) {
    const GroupFamily fam = fams[i % 4];
    const auto k = perturbed(fam, 900 + i);
    const auto frame = SymmetryGroup::generate({fam, 3}).frame();
    Rng rng(mix_seed(909, i));
    std::vector<Vector> pts{Vector::Zero(3)};
    for (const auto& a : frame) pts.push_back(k.radial(a) * a);
    while (pts.size() < 8) {
      const Vector u = rng.unit_vector(3);
      pts.push_back(rng.uniform() * k.radial(u) * u);
    }
    for (const auto& x : pts) {
      const auto r = signed_estimate_check(k, frame, x);
      t.add(r.lhs <= r.rhs + 1e-4);
      worst = std::max(worst, r.lhs - r.rhs);
    }
  }
  return {t.pass && t.count == 400, fmt("%.0f checks, max lhs - rhs %.3e", t.count, worst)};
}

Outcome duality() {
  Tally t;
  const std::vector<Vector> a{Vector::Unit(3, 1), Vector::Unit(3, 2)};
  auto add = [&](const StarBody& k) {
    const double r = duality_identity(k, a).residual;
    t.add(r <= 1e-3, r);
  };
  add(StarBody::unit_ball(3));
  add(StarBody::lp_ball(3, 3.0));
  const GroupFamily fams[] = {GroupFamily::ODiamond, GroupFamily::SODiamond};
  for (int i = 0; i < 10; ++i) add(perturbed(fams[i % 2], 1000 + i));
  return {t.pass && t.count == 12, fmt("max residual %.2e", t.worst)};
}

Outcome bf_chain() {
  Tally t;
  double i1 = 0.0;
  for (int i = 0; i < 10; ++i) {
    const GroupFamily fam = i % 2 ? GroupFamily::OSimplex : GroupFamily::ODiamond;
    const double alpha = i % 2 ? -1.0 / 3.0 : 0.0;
    const auto k = perturbed(fam, 1100 + i);
    const auto frame = SymmetryGroup::generate({fam, 3}).frame();
    for (int level : {2, 3}) t.add(bf_inequality(k, alpha, level, frame).pass);
    const auto chain = ik_chain(k, {fam, 3});
    i1 = std::max(i1, std::abs(chain.values.front() - 1.0));
    t.add(std::abs(chain.values.front() - 1.0) <= 1e-3);
  }
  return {t.pass, fmt("40 bf checks, max |I_1 - 1| %.2e", i1)};
}

Outcome equivariance() {
  Tally t;
  const auto od = SymmetryGroup::generate({GroupFamily::ODiamond, 3});
  t.add(check_equivariance(StarBody::lp_ball(3, 3.0), od) <= 1e-6, check_equivariance(StarBody::lp_ball(3, 3.0), od));
  for (auto fam : {GroupFamily::ODiamond, GroupFamily::SODiamond, GroupFamily::OSimplex, GroupFamily::SOSimplex}) {
    const auto g = SymmetryGroup::generate({fam, 3});
    for (std::uint64_t s = 0; s < 3; ++s) {
      const double r = check_equivariance(perturbed(fam, 1200 + s), g);
      t.add(r <= 1e-6, r);
    }
  }
  return {t.pass, fmt("max residual %.2e", t.worst)};
}

Outcome fundamental_domain() {
  Tally exact, quad;
  const auto d = fundamental_domain_product(fixtures::cross(3), {GroupFamily::ODiamond, 3});
  exact.add(rel(d.ratio, 64.0) <= 1e-6, rel(d.ratio, 64.0));
  const auto c = fundamental_domain_product(fixtures::cube(3), {GroupFamily::ODiamond, 3});
  exact.add(rel(c.ratio, 64.0) <= 1e-6, rel(c.ratio, 64.0));
  const auto s = fundamental_domain_product(fixtures::simplex(3), {GroupFamily::OSimplex, 3});
  exact.add(rel(s.ratio, 16.0) <= 1e-6, rel(s.ratio, 16.0));
  const auto r = fundamental_domain_product(random_invariant_body(SymmetryGroup::generate({GroupFamily::ODiamond, 3}), 5, 2),
                                            {GroupFamily::ODiamond, 3});
  exact.add(rel(r.ratio, 64.0) <= 1e-6, rel(r.ratio, 64.0));
  const auto b = fundamental_domain_product(StarBody::unit_ball(3), {GroupFamily::ODiamond, 3});
  quad.add(rel(b.ratio, 64.0) <= 1e-3, rel(b.ratio, 64.0));
  const auto pd = fundamental_domain_product(perturbed(GroupFamily::ODiamond, 1300), {GroupFamily::ODiamond, 3});
  quad.add(rel(pd.ratio, 64.0) <= 1e-3, rel(pd.ratio, 64.0));
  const auto ps = fundamental_domain_product(perturbed(GroupFamily::OSimplex, 1301), {GroupFamily::OSimplex, 3});
  quad.add(rel(ps.ratio, 16.0) <= 1e-3, rel(ps.ratio, 16.0));
  return {exact.pass && quad.pass, fmt("exact rel err %.2e, quadrature rel err %.2e", exact.worst, quad.worst)};
}

Outcome properties() {
  Rng rng(1414);
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 3;
    const auto k = fixtures::random_symmetric(n, n + 3, rng);
    const auto kk = polar_dual(polar_dual(k));
    if (kk.vertices().size() != k.vertices().size() || hausdorff_distance(kk.vertices(), k.vertices()) > 1e-9) ++failures;
  }
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + i % 2;
    const auto k = fixtures::random_symmetric(n, n + 4, rng);
    const auto lhs = coordinate_section(polar_dual(k), i % n);
    const auto rhs = polar_dual(coordinate_projection(k, i % n));
    if (rel(volume(lhs), volume(rhs)) > 1e-9 || hausdorff_distance(lhs.vertices(), rhs.vertices()) > 1e-9) ++failures;
  }
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 4;
    std::vector<Vector> pts;
    for (int j = 0; j < 3 * n + 4; ++j) pts.push_back(rng.gaussian_vector(n));
    std::vector<Vector> rev(pts.rbegin(), pts.rend());
    const auto a = Polytope::from_points(pts);
    const auto b = Polytope::from_points(rev);
    if (a.vertices().size() != b.vertices().size() || hausdorff_distance(a.vertices(), b.vertices()) != 0.0 ||
        rel(volume(a), volume(b)) > 1e-12)
      ++failures;
  }
  const std::vector<std::vector<std::string>> commands{
      {"verify", "--group", "so-diamond", "--dim", "3", "--samples", "10", "--seed", "3"},
      {"signed", "--body", "ball", "--check", "estimate"},
      {"capacity", "--k", "cube", "--t", "cross"},
  };
  for (const auto& args : commands) {
    std::ostringstream x, y, err;
    cli::run(args, x, err);
    cli::run(args, y, err);
    if (x.str() != y.str() || x.str().empty()) ++failures;
  }
  return {failures == 0, fmt("%.0f failures in 93 property checks", failures)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "equality cases, exact path", equality_cases},
      {2, "SO(diamond^3) harness", [] { return harness(GroupFamily::SODiamond, 64.0 / 6.0); }},
      {3, "SO(simplex^3) harness", [] { return harness(GroupFamily::SOSimplex, 256.0 / 36.0); }},
      {4, "odd-dimension non-symmetry", odd_nonsymmetry},
      {5, "Santalo point at o", santalo_points},
      {6, "affine invariance", affine_invariance},
      {7, "capacity and Viterbo equality", capacity},
      {8, "signed-volume vector of the ball", patch_vector_ball},
      {9, "signed volume estimate", signed_estimate},
      {10, "duality identity", duality},
      {11, "BF inequality and I_1", bf_chain},
      {12, "Lambda equivariance", equivariance},
      {13, "fundamental-domain factorization", fundamental_domain},
      {14, "property suites", properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-36s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
