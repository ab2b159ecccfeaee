#include "doctest.h"
#include "flat/expression.hpp"
#include "flat/polygon.hpp"

using namespace flat;

namespace {
Polygon tri(long a1, long b1, long a2, long b2, long a3, long b3, size_t unit = 0) {
  return triangle_from_angles(RationalAngle(a1, b1), RationalAngle(a2, b2), RationalAngle(a3, b3), unit);
}
Polygon unit_square() {
  return Polygon({{RationalAngle(0), Real(1)}, {RationalAngle(1, 2), Real(1)},
                  {RationalAngle(1), Real(1)}, {RationalAngle(3, 2), Real(1)}});
}
}  // namespace

TEST_CASE("triangle construction") {
  Polygon P = tri(1, 2, 1, 8, 3, 8);
  CHECK(P.size() == 3);
  CHECK(P.angles()[0] == RationalAngle(1, 2));
  CHECK(P.angles()[1] == RationalAngle(1, 8));
  CHECK(P.angles()[2] == RationalAngle(3, 8));
  AngleData d = angle_data(P);
  CHECK(d.N == 8);
  CHECK(d.group_order == 16);

  Polygon E = tri(1, 3, 1, 3, 1, 3);
  for (const auto& e : E.edges()) CHECK(e.length == Real(1));

  // sides 1, z, y when the side opposite pi/3 is the unit
  Polygon B = tri(1, 5, 1, 3, 7, 15, 1);
  CHECK(B.edges()[2].length == Real(1));
  CHECK(B.edges()[1].length == parse_constant("sin(1/5)/sin(1/3)"));
  CHECK(B.edges()[0].length == parse_constant("sin(7/15)/sin(1/3)"));
  CHECK(angle_data(B).N == 15);
  CHECK(angle_data(B).group_order == 30);

  CHECK_THROWS_AS(tri(1, 2, 1, 4, 1, 3), DomainError);
}

TEST_CASE("square and polygon validation") {
  Polygon S = unit_square();
  CHECK(angle_data(S).N == 2);
  CHECK(angle_data(S).group_order == 4);
  CHECK(S.area() == Real(1));
  // does not close
  CHECK_THROWS_AS(Polygon({{RationalAngle(0), Real(1)}, {RationalAngle(1, 2), Real(1)}, {RationalAngle(1), Real(2)}}),
                  DomainError);
  // clockwise
  CHECK_THROWS_AS(Polygon({{RationalAngle(0), Real(1)}, {RationalAngle(3, 2), Real(1)},
                           {RationalAngle(1), Real(1)}, {RationalAngle(1, 2), Real(1)}}),
                  DomainError);
  // self-intersecting bow tie with turning number one is rejected by the simplicity test
  Polygon L({{RationalAngle(0), Real(2)}, {RationalAngle(1, 2), Real(1)}, {RationalAngle(1), Real(1)},
             {RationalAngle(1, 2), Real(1)}, {RationalAngle(1), Real(1)}, {RationalAngle(3, 2), Real(2)}});
  CHECK(L.angles()[3] == RationalAngle(3, 2));
  CHECK(L.area() == Real(3));
  CHECK(L.triangulation().size() == 4);
  CHECK_THROWS_AS(Polygon({{RationalAngle(0), Real(2)}, {RationalAngle(1, 2), Real(1)}, {RationalAngle(1), Real(1)},
                           {RationalAngle(3, 2), Real(2)}, {RationalAngle(1), Real(1)}, {RationalAngle(1, 2), Real(1)}}),
                  DomainError);
}

TEST_CASE("dihedral group laws") {
  for (long N : {1, 2, 3, 8, 15}) {
    auto all = Dihedral::all(N);
    CHECK(all.size() == size_t(2 * N));
    long refl = 0;
    for (const auto& a : all) {
      CHECK((a * a.inverse()).is_identity());
      refl += a.reflection;
      for (const auto& b : all)
        for (const auto& c : all) CHECK((a * b) * c == a * (b * c));
    }
    CHECK(refl == N);
  }
}

TEST_CASE("dihedral realization matches composition") {
  Rational t0(1, 7);
  Point z = Cyclotomic::zeta(5, 2) + Cyclotomic(Rational(1, 3));
  for (const auto& a : Dihedral::all(6))
    for (const auto& b : Dihedral::all(6)) {
      CHECK((a * b).apply(z, t0) == a.apply(b.apply(z, t0), t0));
      Rational d(3, 10);
      CHECK((a * b).apply_direction(d, t0) == a.apply_direction(b.apply_direction(d, t0), t0));
    }
}

TEST_CASE("transformed copies keep lengths and angles") {
  Polygon P = tri(1, 5, 1, 3, 7, 15);
  for (const auto& g : Dihedral::all(P.N())) {
    Polygon Q = P.transformed(g);
    for (size_t k = 0; k < 3; ++k) {
      CHECK(Q.edges()[k].length == P.edges()[P.source_side(g, k)].length);
      CHECK(Q.angles()[k] == P.angles()[P.source_vertex(g, k)]);
      CHECK(Q.vertices()[k] == g.apply(P.vertices()[P.source_vertex(g, k)], P.theta0()));
    }
  }
  for (size_t i = 0; i < 3; ++i) {
    Dihedral s = P.side_reflection(i);
    // the reflection fixes the side direction
    Rational d = P.edges()[i].direction.multiple;
    CHECK(s.apply_direction(d, P.theta0()) == (d + 0).mod(2));
  }
}

TEST_CASE("minus id screen") {
  auto r = minus_id_screen(tri(1, 2, 1, 8, 3, 8));
  CHECK(r.in_group);
  CHECK(r.reason == "even_N");
  CHECK(!minus_id_screen(tri(1, 5, 1, 3, 7, 15)).in_group);
  Polygon Q = tri(1, 12, 1, 3, 7, 12);
  auto q = minus_id_screen(Q, std::vector<bool>{true, true, true});
  CHECK(q.in_group);
  CHECK(q.reason == "even_angle");
}

TEST_CASE("normalization is canonical") {
  Polygon P = tri(1, 5, 1, 3, 7, 15);
  Polygon Q = P.transformed(Dihedral::rotation(15, 4));
  CHECK(P.normalized().key() == Q.normalized().key());
  CHECK(P.normalized().edges()[0].direction == RationalAngle(0));
}
