#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "volprod/errors.hpp"
#include "volprod/starbody.hpp"
#include "volprod/symmetry.hpp"
#include "volprod/symplectic.hpp"

#include <cmath>
#include <numbers>

using namespace volprod;

TEST_CASE("capacity of K x K polar is 4") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto k = fixtures::random_symmetric(3, 6, rng);
    const auto c = chz_lagrangian(k, polar_dual(k));
    CHECK(c.c_hz == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("viterbo equality for cube x cross") {
  for (int n = 2; n <= 5; ++n) {
    const auto c = viterbo_check(fixtures::cube(n), fixtures::cross(n));
    CHECK(c.viterbo_lhs == doctest::Approx(std::pow(4.0, n)).epsilon(1e-9));
    CHECK(c.viterbo_rhs == doctest::Approx(c.viterbo_lhs).epsilon(1e-9));
    CHECK(c.pass);
  }
}

TEST_CASE("worked capacity examples") {
  const auto c = viterbo_check(fixtures::cube(3), fixtures::cube(3));
  CHECK(c.viterbo_lhs == doctest::Approx(64.0));
  CHECK(c.viterbo_rhs == doctest::Approx(384.0));
  const auto b = viterbo_check(StarBody::unit_ball(2), StarBody::unit_ball(2));
  CHECK(b.viterbo_lhs == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(b.viterbo_rhs == doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(1e-6));
  CHECK(b.pass);
  // T = cross, T polar = cube: the largest cube inside the cross has half-width 1/3
  CHECK(chz_lagrangian(fixtures::cross(3), fixtures::cross(3)).c_hz == doctest::Approx(4.0 / 3.0));
  CHECK(inradius(fixtures::cross(3), fixtures::cube(3)) == doctest::Approx(1.0));
  CHECK(inradius(fixtures::cube(3), fixtures::cube(3)) == doctest::Approx(1.0));
}

TEST_CASE("mixed polytope and star body inradius") {
  // inrad of K = ball, T = cube: largest r with r * cross in ball is 1
  CHECK(inradius(StarBody::unit_ball(3), fixtures::cube(3)) == doctest::Approx(1.0).epsilon(1e-6));
  // K = cube, T = ball: largest r with r * ball in cube is 1
  CHECK(inradius(fixtures::cube(3), StarBody::unit_ball(3)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(inradius(StarBody::lp_ball(3, 4.0), StarBody::lp_ball(3, 4.0 / 3.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("capacity scales linearly and is monotone") {
  Rng rng(2);
  const auto k = fixtures::random_symmetric(3, 5, rng);
  const auto t = fixtures::random_symmetric(3, 5, rng);
  const double c = chz_lagrangian(k, t).c_hz;
  CHECK(chz_lagrangian(k.scaled(2.5), t).c_hz == doctest::Approx(2.5 * c));
  std::vector<Vector> more(k.vertices());
  const Vector v = 3.0 * rng.gaussian_vector(3);
  more.push_back(v);
  more.push_back(-v);
  CHECK(chz_lagrangian(Polytope::from_points(more), t).c_hz >= c - 1e-12);
}

TEST_CASE("non-symmetric factors are rejected") {
  try {
    chz_lagrangian(fixtures::simplex(3), fixtures::cube(3));
    FAIL("expected NotCentrallySymmetric");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCentrallySymmetric);
  }
}

TEST_CASE("mahler classes") {
  CHECK(mahler_class(fixtures::cube(3)) == "dimension-at-most-3");
  Rng rng(8);
  CHECK(mahler_class(fixtures::cube(4).transformed(Vector::Constant(4, 2.0).asDiagonal().toDenseMatrix(),
                                                    Vector::Zero(4))) == "1-unconditional");
  const auto so4 = SymmetryGroup::generate({GroupFamily::SODiamond, 4});
  const auto k = random_invariant_body(so4, 3, 1);
  const std::string cls = mahler_class(k);
  CHECK((cls == "so-diamond-invariant-even" || cls == "o-diamond-invariant" || cls == "1-unconditional"));
  CHECK(mahler_class(fixtures::random_symmetric(4, 7, rng)) == "");
}

TEST_CASE("chain links") {
  const auto c = mahler_implies_viterbo_chain(fixtures::cross(3), fixtures::cube(3));
  REQUIRE(c.links.size() == 3);
  CHECK(c.pass);
  CHECK(std::abs(c.links[1].slack) < 1e-9);

  const auto so4 = SymmetryGroup::generate({GroupFamily::SODiamond, 4});
  Rng rng(4);
  const auto e = mahler_implies_viterbo_chain(random_invariant_body(so4, 11, 2), fixtures::random_symmetric(4, 6, rng));
  CHECK(e.pass);

  try {
    mahler_implies_viterbo_chain(fixtures::random_symmetric(5, 7, rng), fixtures::cube(5));
    FAIL("expected HypothesisNotCovered");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::HypothesisNotCovered);
  }
}
