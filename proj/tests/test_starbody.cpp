#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "volprod/errors.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"

#include <cmath>
#include <numbers>

using namespace volprod;

namespace {

double lp_volume(int n, double p) {
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
}

double pnorm(const Vector& x, double p) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

double scanned_support(const StarBody& k, const Vector& y, int count, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  for (int i = 0; i < count; ++i) {
    const Vector u = rng.unit_vector(k.dim());
    best = std::max(best, k.radial(u) * u.dot(y));
  }
  return best;
}

}  // namespace

TEST_CASE("lp ball radial, gauge and volume") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto k = StarBody::lp_ball(3, p);
    Rng rng(1);
    for (int i = 0; i < 10; ++i) {
      const Vector x = rng.gaussian_vector(3);
      CHECK(k.gauge(x) == doctest::Approx(pnorm(x, p)).epsilon(1e-12));
      CHECK(k.radial(x) * k.gauge(x) == doctest::Approx(1.0));
    }
    CHECK(volume_star(k) == doctest::Approx(lp_volume(3, p)).epsilon(1e-5));
  }
  CHECK(volume_star(StarBody::unit_ball(2)) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("polar of lp is lq") {
  const auto k = StarBody::lp_ball(3, 3.0);
  CHECK(polar_volume(k) == doctest::Approx(lp_volume(3, 1.5)).epsilon(1e-5));
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const Vector y = rng.gaussian_vector(3);
    CHECK(k.support(y) == doctest::Approx(pnorm(y, 1.5)).epsilon(1e-10));
  }
}

TEST_CASE("lambda is the normalized gradient with x . Lambda(x) = 1") {
  const auto k = StarBody::lp_ball(3, 4.0);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const Vector u = rng.unit_vector(3);
    const Vector x = k.radial(u) * u;
    const Vector l = k.lambda(x);
    CHECK(x.dot(l) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(k.support(l) == doctest::Approx(1.0).epsilon(1e-6));
    // central difference of the gauge
    Vector g(3);
    for (int j = 0; j < 3; ++j) {
      const Vector h = 1e-6 * Vector::Unit(3, j);
      g(j) = (k.gauge(x + h) - k.gauge(x - h)) / 2e-6;
    }
    CHECK((g - k.gauge_gradient(x)).norm() < 1e-6);
  }
  CHECK_THROWS_AS(k.lambda(Vector::Zero(3)), Error);
  CHECK_THROWS_AS(k.lambda(Vector::Unit(3, 0) * 0.5), Error);
}

TEST_CASE("invalid lp exponents") {
  CHECK_THROWS_AS(StarBody::lp_ball(3, 1.0), Error);
  CHECK_THROWS_AS(StarBody::lp_ball(3, 0.5), Error);
  CHECK_THROWS_AS(StarBody::lp_ball(0, 2.0), Error);
}

TEST_CASE("polytope-backed star body") {
  const auto k = StarBody::from_polytope(fixtures::cube(3));
  CHECK(k.radial(Vector::Unit(3, 0)) == doctest::Approx(1.0));
  CHECK(k.radial(Vector::Constant(3, 1.0)) == doctest::Approx(1.0));
  CHECK(k.support(Vector::Constant(3, 1.0)) == doctest::Approx(3.0));
  CHECK_FALSE(k.is_smooth());
  CHECK_THROWS_AS(k.lambda(Vector::Unit(3, 0)), Error);
}

TEST_CASE("perturbed bodies are invariant, convex and close to the base") {
  for (auto fam : {GroupFamily::SODiamond, GroupFamily::ODiamond, GroupFamily::SOSimplex}) {
    const auto g = SymmetryGroup::generate({fam, 3});
    const auto base = StarBody::unit_ball(3);
    const auto k = perturbed_invariant_body(base, g, 0.03, 7);
    CHECK(is_invariant(k, g).residual < 1e-10);
    Rng rng(4);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double r = k.radial(rng.unit_vector(3)) / k.dilation();
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(lo >= 1.0 - 1.05 * 0.03);
    CHECK(hi <= 1.0 + 1.05 * 0.03);
    CHECK(hi - lo > 0.03);
  }
}

TEST_CASE("reference perturbation passes its checks") {
  const auto g = SymmetryGroup::generate({GroupFamily::SODiamond, 3});
  const auto k = perturbed_invariant_body(StarBody::unit_ball(3), g, 0.05, 1);
  CHECK(is_invariant(k, g).residual < 1e-10);
  CHECK(perturbed_invariant_body(StarBody::unit_ball(3), g, 0.0, 1).kind() == StarKind::LpBall);
}

TEST_CASE("perturbation is deterministic in the seed") {
  const auto g = SymmetryGroup::generate({GroupFamily::ODiamond, 3});
  const auto a = perturbed_invariant_body(StarBody::unit_ball(3), g, 0.03, 9, 1000);
  const auto b = perturbed_invariant_body(StarBody::unit_ball(3), g, 0.03, 9, 1000);
  const auto c = perturbed_invariant_body(StarBody::unit_ball(3), g, 0.03, 10, 1000);
  const Vector u = Vector::Constant(3, 1.0).normalized() + 0.1 * Vector::Unit(3, 0);
  CHECK(a.radial(u) == b.radial(u));
  CHECK(a.radial(u) != c.radial(u));
}

TEST_CASE("support function of perturbed body against a dense scan") {
  const auto g = SymmetryGroup::generate({GroupFamily::SODiamond, 3});
  const auto k = perturbed_invariant_body(StarBody::unit_ball(3), g, 0.03, 3, 2000);
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const Vector y = rng.unit_vector(3);
    const double scan = scanned_support(k, y, 200000, 100 + i);
    CHECK(k.support(y) >= scan - 1e-12);
    CHECK(k.support(y) == doctest::Approx(scan).epsilon(1e-3));
  }
}

TEST_CASE("large perturbations lose convexity") {
  const auto g = SymmetryGroup::generate({GroupFamily::ODiamond, 3});
  bool raised = false;
  for (std::uint64_t s = 0; s < 10 && !raised; ++s) {
    try {
      perturbed_invariant_body(StarBody::unit_ball(3), g, 0.3, s, 2000);
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::ConvexityLost;
    }
  }
  CHECK(raised);
}

TEST_CASE("scaling") {
  const auto k = StarBody::unit_ball(3).scaled(2.0);
  CHECK(k.radial(Vector::Unit(3, 1)) == doctest::Approx(2.0));
  CHECK(volume_star(k) == doctest::Approx(8.0 * 4.0 * std::numbers::pi / 3.0).epsilon(1e-8));
}
