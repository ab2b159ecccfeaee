#include "doctest.h"
#include "flat/catalog.hpp"
#include "flat/expression.hpp"
#include "flat/periodicity.hpp"

using namespace flat;

namespace {

std::vector<Rational> angles_of(const Polygon& P) {
  std::vector<Rational> out;
  for (const auto& a : P.angles()) out.push_back(a.multiple);
  return out;
}

std::vector<long> cones_of_vertex(const TranslationSurface& M, size_t v) {
  std::vector<long> out;
  for (size_t i = 0; i < M.cone_points().size(); ++i)
    if (M.cone_points()[i].source_vertex == static_cast<long>(v)) out.push_back(static_cast<long>(i));
  return out;
}

}  // namespace

TEST_CASE("catalog angles follow the family formulas") {
  CHECK(angles_of(make_entry("2", 8).polygon) == std::vector<Rational>{Rational(1, 2), Rational(1, 8), Rational(3, 8)});
  CHECK(angles_of(make_entry("6", 5).polygon) ==
        std::vector<Rational>{Rational(1, 10), Rational(1, 5), Rational(7, 10)});
  CHECK(angles_of(make_entry("9a", 7).polygon) ==
        std::vector<Rational>{Rational(1, 7), Rational(1, 7), Rational(1, 14), Rational(23, 14)});
  CHECK(angles_of(make_entry("9b", 5).polygon) ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 5), Rational(1, 5), Rational(11, 10)});
  for (long n = 3; n <= 9; ++n) {
    auto a = angles_of(make_entry("1", n).polygon);
    for (const auto& x : a) CHECK(x == Rational(n - 2, n));
  }
  CHECK(angles_of(make_entry("7").polygon) == std::vector<Rational>{Rational(1, 12), Rational(1, 3), Rational(7, 12)});
}

TEST_CASE("catalog angle sums") {
  for (const auto& f : catalog_families()) {
    std::vector<std::optional<long>> ns;
    if (!f.needs_n)
      ns = {std::nullopt};
    else
      for (long n = f.n_min; n < f.n_min + 6; ++n)
        if (!f.odd_only || n % 2) ns.push_back(n);
    for (const auto& n : ns) {
      CatalogEntry c = make_entry(f.id, n);
      Rational s;
      for (const auto& a : c.polygon.angles()) s += a.multiple;
      CHECK(s == Rational(static_cast<long>(c.polygon.size()) - 2));
      CHECK(c.family == f.id);
    }
  }
}

TEST_CASE("catalog parameter ranges") {
  CHECK_THROWS_AS(make_entry("2", 3), DomainError);
  CHECK_THROWS_AS(make_entry("2"), DomainError);
  CHECK_THROWS_AS(make_entry("6", 3), DomainError);
  CHECK_THROWS_AS(make_entry("4", 4), DomainError);
  CHECK_THROWS_AS(make_entry("9a", 5), DomainError);
  CHECK_THROWS_AS(make_entry("9a", 8), DomainError);
  CHECK_THROWS_AS(make_entry("9b", 6), DomainError);
  CHECK_THROWS_AS(make_entry("5a", 4), DomainError);
  CHECK_THROWS_AS(make_entry("11"), DomainError);
  CHECK_NOTHROW(make_entry("9a", 7));
}

TEST_CASE("reflex catalog polygons") {
  CatalogEntry L = make_entry("8");
  CHECK(L.polygon.size() == 6);
  long reflex = 0;
  for (const auto& a : L.polygon.angles()) reflex += a.multiple > Rational(1);
  CHECK(reflex == 1);
  CHECK(L.polygon.area() == Real(1) + parse_constant("2*cos(1/5)") * Real(2));
  for (const char* f : {"9a", "9b"}) {
    CatalogEntry c = make_entry(f, 7);
    CHECK(c.polygon.size() == 4);
    CHECK(c.polygon.angles()[3].multiple > Rational(1));
    CHECK(c.polygon.area().sign() > 0);
  }
}

TEST_CASE("catalog topology by two routes") {
  std::vector<CatalogEntry> entries;
  for (long n = 5; n <= 8; ++n) entries.push_back(make_entry("2", n));
  for (const char* f : {"5a", "5b", "5c"}) entries.push_back(make_entry(f));
  for (long n : {5, 6}) entries.push_back(make_entry("6", n));
  for (const auto& c : entries) {
    TranslationSurface M = unfold(c.polygon);
    Topology t = genus(M);
    CHECK(t.V - t.E + t.F == t.chi);
    CHECK(t.chi == 2 - 2 * t.genus);
    CHECK(t.sum_k_minus_1 == 2 * t.genus - 2);
    if (c.facts.genus) CHECK(t.genus == *c.facts.genus);
    for (size_t v : c.facts.singular_vertices)
      for (long z : cones_of_vertex(M, v)) CHECK(M.cone_points()[z].is_singular());
  }
  CHECK(genus(unfold(make_entry("2", 8).polygon)).genus == 2);
  CHECK(genus(unfold(make_entry("2", 5).polygon)).genus == 2);
}

TEST_CASE("even-N catalog members pass the rotation screen") {
  for (const auto& f : catalog_families()) {
    std::vector<std::optional<long>> ns;
    if (!f.needs_n)
      ns = {std::nullopt};
    else
      for (long n = f.n_min; n < f.n_min + 5; ++n)
        if (!f.odd_only || n % 2) ns.push_back(n);
    for (const auto& n : ns) {
      CatalogEntry c = make_entry(f.id, n);
      CHECK(minus_id_screen(c.polygon).in_group == (c.polygon.N() % 2 == 0));
    }
  }
}

TEST_CASE("centers of the double n-gon and Ward surfaces are non-periodic") {
  for (const char* f : {"2", "6"})
    for (long n : {5, 7}) {
      CatalogEntry c = make_entry(f, n);
      REQUIRE(c.facts.non_periodic_vertices == std::vector<size_t>{1});
      TranslationSurface M = unfold(c.polygon);
      auto dirs = default_directions(M);
      for (long z : cones_of_vertex(M, 1)) {
        PeriodicityVerdict v = classify_point(M, z, dirs);
        CHECK(v.status == PointStatus::non_periodic);
        CHECK(v.certificate == CertificateKind::irrational_split);
        CHECK(replay_certificate(M, v));
      }
    }
}

TEST_CASE("periodic vertex facts hold") {
  std::vector<CatalogEntry> entries = {make_entry("1", 4), make_entry("1", 5), make_entry("1", 8),
                                       make_entry("2", 4), make_entry("2", 8), make_entry("3", 4),
                                       make_entry("3", 6), make_entry("6", 4), make_entry("6", 6),
                                       make_entry("8"),    make_entry("2", 5), make_entry("6", 5)};
  for (const auto& c : entries) {
    TranslationSurface M = unfold(c.polygon);
    for (size_t v : c.facts.periodic_vertices)
      for (long z : cones_of_vertex(M, v)) {
        PeriodicityVerdict p = classify_point(M, z, {});
        CHECK(p.status == PointStatus::periodic);
        CHECK(replay_certificate(M, p));
      }
  }
}
