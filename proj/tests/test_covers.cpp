#include <numeric>
#include <set>

#include "doctest.h"
#include "flat/covers.hpp"

using namespace flat;

namespace {

Polygon tri(long a1, long b1, long a2, long b2, long a3, long b3, size_t unit = 0) {
  return triangle_from_angles(RationalAngle(a1, b1), RationalAngle(a2, b2), RationalAngle(a3, b3), unit);
}

Polygon unit_square() {
  return Polygon({{RationalAngle(0), Real(1)}, {RationalAngle(1, 2), Real(1)},
                  {RationalAngle(1), Real(1)}, {RationalAngle(3, 2), Real(1)}});
}

// Euler characteristic of the unfolding from the angles alone.
long chi_from_angles(const Polygon& Q) {
  long N = 1;
  for (const auto& a : Q.angles()) N = std::lcm(N, a.denominator());
  long s = 0;
  for (const auto& a : Q.angles()) s += (N / a.denominator()) * (a.numerator() - 1);
  return -s;
}

long lcm_of_denominators(const Polygon& Q) {
  long N = 1;
  for (const auto& a : Q.angles()) N = std::lcm(N, a.denominator());
  return N;
}

void check_cover(const Tiling& t, const CoverAnalysis& a) {
  CHECK(t.outline.area() == Real(static_cast<long>(t.size())) * t.base.area());
  CHECK(a.N_Q == lcm_of_denominators(t.outline));
  CHECK(a.top_Q.chi == chi_from_angles(t.outline));
  CHECK(a.top_P.chi == chi_from_angles(t.base));
  CHECK(a.rh_consistent);
  CHECK(a.degree_consistent);
  CHECK(a.class_degree_consistent);
  CHECK(a.locus_invariant);
  CHECK(static_cast<long>(a.G_Q.size()) == 2 * a.N_Q);
  // G_Q is a subgroup of G_P
  std::set<long> g;
  for (const auto& h : a.G_Q) g.insert(h.ordinal());
  for (const auto& x : a.G_Q)
    for (const auto& y : a.G_Q) CHECK(g.count((x * y).ordinal()));
  for (const auto& cp : a.points)
    if (cp.kind != "interior") CHECK(cp.e == cp.e_formula);
  if (!a.branch_locus.empty()) CHECK(a.top_Q.genus > 1 + a.d * (a.top_P.genus - 1));
  long corners = 0;
  for (const auto& p : t.points) corners += static_cast<long>(p.corners.size());
  CHECK(corners == static_cast<long>(t.size() * t.base.size()));
}

Tiling rhombus() {
  // two right triangles make the isosceles (1/5,1/5,3/5), two more mirror it across its base
  return verify_tiling(tri(1, 2, 1, 5, 3, 10), {{0, 2}, {0, 0}, {2, 2}});
}

}  // namespace

TEST_CASE("single copy is its own outline") {
  Polygon P = tri(1, 2, 1, 5, 3, 10);
  Tiling t = verify_tiling(P, std::vector<TilingStep>{});
  CHECK(t.outline.key() == P.key());
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.d == 1);
  CHECK(a.branch_locus.empty());
  check_cover(t, a);
}

TEST_CASE("2x2 square grid") {
  Tiling t = verify_tiling(unit_square(), {{0, 1}, {0, 2}, {1, 2}});
  CHECK(t.outline.size() == 4);
  for (const auto& e : t.outline.edges()) CHECK(e.length == Real(2));
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.m == 1);
  CHECK(a.d == 4);
  CHECK(a.branch_locus.empty());
  check_cover(t, a);
  long interior = 0, edge = 0;
  for (const auto& cp : a.points) {
    interior += cp.kind == "interior";
    edge += cp.kind == "edge";
  }
  CHECK(interior == 1);
  CHECK(edge == 4);
  auto v = appropriate_verdict(t, a, {}, {true, true});
  CHECK(v.appropriate == Appropriate::no);
  CHECK(v.reasons.front() == "square_tiled_base");
}

TEST_CASE("L-shape of three squares is branched at the reflex corner") {
  Tiling t = verify_tiling(unit_square(), {{0, 1}, {0, 2}});
  CHECK(t.outline.size() == 6);
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.d == 3);
  CHECK(a.top_Q.genus == 2);
  bool reflex = false;
  for (const auto& cp : a.points)
    if (cp.k == 3) {
      reflex = true;
      CHECK(cp.e == 3);
      CHECK(cp.preimages == 1);
    }
  CHECK(reflex);
  CHECK(a.ramification == 2);
  check_cover(t, a);
}

TEST_CASE("right triangle doubled into the isosceles (1/5,1/5,3/5)") {
  Tiling t = verify_tiling(tri(1, 2, 1, 5, 3, 10), {{0, 2}});
  CHECK(t.outline.normalized().key() == tri(1, 5, 1, 5, 3, 5).normalized().key());
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.N_Q == 5);
  CHECK(a.m == 2);
  CHECK(a.d == 1);
  CHECK(a.branch_locus.empty());
  CHECK(a.top_Q.genus == a.top_P.genus);
  check_cover(t, a);
}

TEST_CASE("kite across the hypotenuse") {
  Tiling t = verify_tiling(tri(1, 2, 1, 5, 3, 10), {{0, 1}});
  CHECK(t.outline.size() == 4);
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.N_Q == 10);
  CHECK(a.d == 2);
  bool center = false;
  for (const auto& cp : a.points)
    if (cp.base_vertex == 1) {
      center = true;
      CHECK(cp.k == 2);
      CHECK(cp.e == 2);
      CHECK(cp.preimages == 2);
    }
  CHECK(center);
  CHECK(a.top_Q.genus == 4);
  check_cover(t, a);
}

TEST_CASE("rhombus of four triangles has two branch points") {
  Tiling t = rhombus();
  CoverAnalysis a = analyze_cover(t);
  CHECK(a.N_Q == 5);
  CHECK(a.d == 2);
  long branched = 0;
  for (const auto& cp : a.points)
    if (cp.branched()) {
      ++branched;
      CHECK(cp.base_vertex == 1);
      CHECK(cp.e == 2);
    }
  CHECK(branched == 2);
  CHECK(a.branch_locus.size() == 2);
  check_cover(t, a);
  auto v = appropriate_verdict(t, a, std::vector<PeriodicityVerdict>(unfold(t.base).cone_points().size()));
  CHECK(v.appropriate == Appropriate::no);
  CHECK(std::find(v.reasons.begin(), v.reasons.end(), "branched_over_2_points") != v.reasons.end());
}

TEST_CASE("composed tilings agree with the direct tiling") {
  Polygon P = tri(1, 2, 1, 5, 3, 10);
  Tiling inner = verify_tiling(P, {{0, 2}});
  // base of the isosceles is the side opposite its apex
  size_t base_side = 0;
  for (size_t k = 0; k < inner.outline.size(); ++k)
    if (inner.outline.angles()[(k + 2) % 3] == RationalAngle(3, 5)) base_side = k;
  Tiling outer = verify_tiling(inner.outline, {{0, base_side}});
  Tiling c = compose_tilings(outer, inner);
  Tiling direct = rhombus();
  CHECK(c.size() == 4);
  CHECK(c.outline.normalized().key() == direct.outline.normalized().key());
  check_cover(c, analyze_cover(c));
}

TEST_CASE("Riemann-Hurwitz arithmetic") {
  // genus 2 base, degree 3, one point with e = 3
  long chi = riemann_hurwitz_chi(3, -2, 2);
  CHECK(chi == -8);
  CHECK((2 - chi) / 2 == 5);
  // a double cover with a single simple branch point has odd chi, which no closed surface has
  for (long chi_base = -10; chi_base <= 2; chi_base += 2) CHECK(riemann_hurwitz_chi(2, chi_base, 1) % 2 != 0);
}

TEST_CASE("odd multiplier") {
  CHECK(odd_multiplier(RationalAngle(1, 5)) == 1);
  CHECK(odd_multiplier(RationalAngle(3, 10)) == 2);
  CHECK(odd_multiplier(RationalAngle(7, 12)) == 4);
  CHECK(odd_multiplier(RationalAngle(1, 8)) == 8);
}

TEST_CASE("invalid tilings are rejected") {
  Polygon S = unit_square();
  CHECK_THROWS_WITH_AS(verify_tiling(S, {{0, 1}, {0, 1}}), "copies overlap", DomainError);
  Motion id{false, Rational(0), Point()};
  Motion shifted{false, Rational(0), Point(1)};
  CHECK_THROWS_AS(verify_motions(S, std::vector<Motion>{id, shifted}), DomainError);
  Motion far{true, Rational(1), Point(5)};
  CHECK_THROWS_WITH_AS(verify_motions(S, std::vector<Motion>{id, far}), "copies do not form a connected union",
                       DomainError);
  Motion slid{true, Rational(1), Point(2) + Cyclotomic::imaginary_unit() * Point(Rational(1, 2))};
  CHECK_THROWS_WITH_AS(verify_motions(S, std::vector<Motion>{id, slid}), "copies meet along part of a side",
                       DomainError);
  Motion tilted{false, Rational(1, 3), Point()};
  CHECK_THROWS_AS(verify_motions(S, std::vector<Motion>{id, tilted}), DomainError);
  CHECK_THROWS_AS(verify_tiling(S, {{3, 0}}), DomainError);
}

TEST_CASE("ring of copies around a vertex with a hole is not simple") {
  // eight squares around a central square leave the centre uncovered
  Polygon S = unit_square();
  std::vector<Motion> ms;
  for (long x = 0; x < 3; ++x)
    for (long y = 0; y < 3; ++y) {
      if (x == 1 && y == 1) continue;
      bool rx = x % 2, ry = y % 2;
      // reflect across vertical and horizontal unit lines as needed
      Rational ang = rx ? Rational(1) : Rational(0);
      bool refl = rx != ry;
      Point tau = Point(rx ? x + 1 : x) + Cyclotomic::imaginary_unit() * Point(ry ? y + 1 : y);
      ms.push_back({refl, ang, tau});
    }
  CHECK_THROWS_WITH_AS(verify_motions(S, ms), "outline is not simple", DomainError);
}
