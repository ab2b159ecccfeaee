#include "flat/catalog.hpp"

#include <algorithm>

#include "flat/expression.hpp"

namespace flat {

const std::vector<FamilyInfo>& catalog_families() {
  static const std::vector<FamilyInfo> families = {
      {"1", "regular n-gon", true, 3, false},
      {"2", "right triangle (1/2, 1/n, (n-2)/2n)", true, 4, false},
      {"3", "acute isosceles triangle ((n-1)/2n, (n-1)/2n, 1/n)", true, 3, false},
      {"4", "obtuse isosceles triangle (1/n, 1/n, (n-2)/n)", true, 5, false},
      {"5a", "acute scalene triangle (1/4, 1/3, 5/12)", false, 0, false},
      {"5b", "acute scalene triangle (1/5, 1/3, 7/15)", false, 0, false},
      {"5c", "acute scalene triangle (2/9, 1/3, 4/9)", false, 0, false},
      {"6", "obtuse triangle (1/2n, 1/n, (2n-3)/2n)", true, 4, false},
      {"7", "obtuse triangle (1/12, 1/3, 7/12)", false, 0, false},
      {"8", "L-shaped polygon", false, 0, false},
      {"9a", "4-gon (1/n, 1/n, 1/2n, (4n-5)/2n)", true, 7, true},
      {"9b", "4-gon (1/2, 1/n, 1/n, (3n-4)/2n)", true, 5, true},
      {"10", "square-tiled polygon (n unit squares in a row)", false, 1, false},
  };
  return families;
}

namespace {

Polygon tri(const Rational& a, const Rational& b, const Rational& c, size_t unit = 0) {
  return triangle_from_angles(RationalAngle(a), RationalAngle(b), RationalAngle(c), unit);
}

Real cross_of(const Point& a, const Point& b) { return Real::imag_part_of(a.conj() * b); }

}  // namespace

Polygon quadrilateral_from_angles(const std::vector<RationalAngle>& angles) {
  if (angles.size() != 4) throw DomainError("quadrilateral needs four angles");
  Rational sum;
  for (const auto& a : angles) sum += a.multiple;
  if (sum != Rational(2)) throw DomainError("quadrilateral angles must sum to 2*pi");
  std::vector<Rational> dir = {Rational(0)};
  for (size_t k = 1; k < 4; ++k) dir.push_back((dir.back() + Rational(1) - angles[k].multiple).mod(2));
  std::vector<Point> e;
  for (const auto& d : dir) e.push_back(Cyclotomic::exp_pi_i(d));
  for (size_t first = 0; first < 4; ++first) {
    size_t f1 = first, f2 = (first + 1) % 4, u = (first + 2) % 4, v = (first + 3) % 4;
    Point R = -(e[f1] + e[f2]);
    Real den = cross_of(e[u], e[v]);
    if (den.is_zero()) continue;
    Real lu = cross_of(R, e[v]) / den, lv = cross_of(e[u], R) / den;
    if (lu.sign() <= 0 || lv.sign() <= 0) continue;
    std::vector<Real> len(4, Real(1));
    len[u] = lu;
    len[v] = lv;
    std::vector<Edge> edges;
    for (size_t k = 0; k < 4; ++k) edges.push_back({RationalAngle(dir[k]), len[k].minimized()});
    try {
      return Polygon(std::move(edges));
    } catch (const DomainError&) {
    }
  }
  throw DomainError("no simple quadrilateral with these angles");
}

CatalogEntry make_l_shape(const Real& a, const Real& b) {
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("L-shape arm lengths must be positive");
  std::vector<Edge> e = {
      {RationalAngle(0), Real(1) + a},  {RationalAngle(1, 2), Real(1)}, {RationalAngle(1), a},
      {RationalAngle(1, 2), b},         {RationalAngle(1), Real(1)},    {RationalAngle(3, 2), Real(1) + b},
  };
  CatalogEntry c{"8", std::nullopt, Polygon(std::move(e)), {}, {}};
  for (size_t k = 0; k < 6; ++k) c.facts.periodic_vertices.push_back(k);
  c.facts.surface = "L-shaped table";
  return c;
}

CatalogEntry make_entry(const std::string& family, std::optional<long> n) {
  auto it = std::find_if(catalog_families().begin(), catalog_families().end(),
                         [&](const FamilyInfo& f) { return f.id == family; });
  if (it == catalog_families().end()) throw DomainError("unknown catalog family " + family);
  if (it->needs_n) {
    if (!n) throw DomainError("family " + family + " needs n");
    if (*n < it->n_min) throw DomainError("family " + family + " needs n >= " + std::to_string(it->n_min));
    if (it->odd_only && *n % 2 == 0) throw DomainError("family " + family + " needs odd n");
  } else if (family == "10") {
    if (n && *n < 1) throw DomainError("family 10 needs n >= 1");
  } else if (n) {
    throw DomainError("family " + family + " takes no parameter");
  }

  CatalogEntry c{family, n, Polygon(), {}, {}};
  auto all_vertices = [&] {
    std::vector<size_t> v;
    for (size_t k = 0; k < c.polygon.size(); ++k) v.push_back(k);
    return v;
  };
  long m = n.value_or(0);
  if (family == "1") {
    std::vector<Edge> e;
    for (long k = 0; k < m; ++k) e.push_back({RationalAngle(Rational(2 * k, m)), Real(1)});
    c.polygon = Polygon(std::move(e));
    c.facts.periodic_vertices = all_vertices();
    c.facts.surface = "regular polygon";
  } else if (family == "2") {
    c.polygon = tri(Rational(1, 2), Rational(1, m), Rational(m - 2, 2 * m));
    c.vertex_names = {"right", "center", "vertex"};
    if (m % 2 == 0) {
      c.facts.periodic_vertices = all_vertices();
      c.facts.surface = "regular n-gon";
    } else {
      c.facts.periodic_vertices = {0};
      c.facts.singular_vertices = {2};
      if (m >= 5) c.facts.non_periodic_vertices = {1};
      c.facts.surface = "double regular n-gon";
    }
  } else if (family == "3") {
    c.polygon = tri(Rational(m - 1, 2 * m), Rational(m - 1, 2 * m), Rational(1, m));
    c.facts.periodic_vertices = all_vertices();
    c.facts.surface = "regular 2n-gon";
  } else if (family == "4") {
    c.polygon = tri(Rational(1, m), Rational(1, m), Rational(m - 2, m));
    c.facts.surface = m % 2 == 0 ? "double 2n-gon" : "double regular n-gon";
  } else if (family == "5a") {
    c.polygon = tri(Rational(1, 4), Rational(1, 3), Rational(5, 12), 1);
    c.vertex_names = {"b", "a", "c"};
    c.facts.genus = 3;
    c.facts.singular_vertices = {2};
    c.facts.non_periodic_vertices = {1};
  } else if (family == "5b") {
    c.polygon = tri(Rational(1, 5), Rational(1, 3), Rational(7, 15), 1);
    c.vertex_names = {"c", "a", "b"};
    c.facts.genus = 4;
    c.facts.singular_vertices = {2};
    c.facts.non_periodic_vertices = {0, 1};
  } else if (family == "5c") {
    c.polygon = tri(Rational(2, 9), Rational(1, 3), Rational(4, 9));
    c.vertex_names = {"a", "b", "c"};
    c.facts.genus = 3;
    c.facts.singular_vertices = {0, 2};
    c.facts.non_periodic_vertices = {1};
  } else if (family == "6") {
    c.polygon = tri(Rational(1, 2 * m), Rational(1, m), Rational(2 * m - 3, 2 * m));
    if (m % 2 == 0) {
      c.facts.periodic_vertices = all_vertices();
    } else {
      c.facts.periodic_vertices = {0};
      if (m >= 5) c.facts.non_periodic_vertices = {1};
    }
    c.facts.surface = "Ward surface";
  } else if (family == "7") {
    c.polygon = tri(Rational(1, 12), Rational(1, 3), Rational(7, 12));
  } else if (family == "8") {
    Real golden = parse_constant("2*cos(1/5)");
    return make_l_shape(golden, golden);
  } else if (family == "9a") {
    c.polygon = quadrilateral_from_angles({RationalAngle(1, m), RationalAngle(1, m), RationalAngle(1, 2 * m),
                                           RationalAngle(4 * m - 5, 2 * m)});
  } else if (family == "9b") {
    c.polygon = quadrilateral_from_angles({RationalAngle(1, 2), RationalAngle(1, m), RationalAngle(1, m),
                                           RationalAngle(3 * m - 4, 2 * m)});
  } else {
    long k = n.value_or(1);
    c.polygon = Polygon({{RationalAngle(0), Real(k)}, {RationalAngle(1, 2), Real(1)},
                         {RationalAngle(1), Real(k)}, {RationalAngle(3, 2), Real(1)}});
    c.facts.square_tiled = true;
    c.facts.surface = "square-tiled";
  }
  return c;
}

}  // namespace flat
