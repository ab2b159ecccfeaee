#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flat/polygon.hpp"

namespace flat {

// Facts recorded for a catalog polygon; vertex indices refer to the generated polygon.
struct CatalogFacts {
  bool lattice = true;
  bool square_tiled = false;
  std::optional<long> genus;
  std::vector<size_t> singular_vertices;
  std::vector<size_t> non_periodic_vertices;
  std::vector<size_t> periodic_vertices;  // fixed by the rotation by pi
  std::string surface;
};

struct CatalogEntry {
  std::string family;  // "1" .. "10", with "5a" "5b" "5c" "9a" "9b"
  std::optional<long> n;
  Polygon polygon;
  CatalogFacts facts;
  std::vector<std::string> vertex_names;
};

struct FamilyInfo {
  std::string id;
  std::string description;
  bool needs_n;
  long n_min;
  bool odd_only;
};

const std::vector<FamilyInfo>& catalog_families();

// Throws DomainError when n is missing or outside the family's range.
CatalogEntry make_entry(const std::string& family, std::optional<long> n = std::nullopt);

// L-shaped table: unit square with arms of lengths a (right) and b (up).
CatalogEntry make_l_shape(const Real& a, const Real& b);

// Polygon with the given interior angles, first edge along direction 0.
// Two consecutive sides are set to 1 and the other two solve closure.
Polygon quadrilateral_from_angles(const std::vector<RationalAngle>& angles);

}  // namespace flat
