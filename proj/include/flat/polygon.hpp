#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flat/geometry.hpp"

namespace flat {

// Angle value multiple*pi.
struct RationalAngle {
  Rational multiple;

  RationalAngle() = default;
  RationalAngle(const Rational& m) : multiple(m) {}
  RationalAngle(long p, long q) : multiple(p, q) {}

  RationalAngle mod2() const { return RationalAngle(multiple.mod(2)); }
  long numerator() const { return multiple.num_long(); }
  long denominator() const { return multiple.den_long(); }
  bool is_even() const { return denominator() % 2 == 0; }
  std::string str() const { return multiple.str(); }
  friend bool operator==(const RationalAngle& a, const RationalAngle& b) { return a.multiple == b.multiple; }
};

struct Edge {
  RationalAngle direction;
  Real length;
  Point vector() const;
};

// Element of D_N: rotation by 2*pi*index/N, or reflection in the line at
// angle (theta0 + index/N)*pi, where theta0 is fixed by the owning polygon.
struct Dihedral {
  long N = 1;
  bool reflection = false;
  long index = 0;

  static Dihedral identity(long N) { return {N, false, 0}; }
  static Dihedral rotation(long N, long j);
  static Dihedral reflection_at(long N, long j);
  static std::vector<Dihedral> all(long N);

  Dihedral operator*(const Dihedral& o) const;
  Dihedral inverse() const;
  bool is_identity() const { return !reflection && index == 0; }
  // position in all(N)
  long ordinal() const { return (reflection ? N : 0) + index; }
  std::string label() const;
  static Dihedral parse(long N, const std::string& label);

  Point apply(const Point& z, const Rational& theta0) const;
  Rational apply_direction(const Rational& d, const Rational& theta0) const;
  friend bool operator==(const Dihedral& a, const Dihedral& b) {
    return a.N == b.N && a.reflection == b.reflection && a.index == b.index;
  }
  friend bool operator<(const Dihedral& a, const Dihedral& b) { return a.ordinal() < b.ordinal(); }
};

struct AngleData {
  std::vector<RationalAngle> angles;
  long N;
  long group_order;
};

class Polygon {
 public:
  Polygon() = default;
  // Validates closure, simplicity, counterclockwise orientation and angle range.
  explicit Polygon(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  size_t size() const { return edges_.size(); }
  // vertex i is the start of edge i; vertex 0 is the origin
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Vec2>& coords() const { return coords_; }
  // interior angle at vertex i, between edges i-1 and i
  const std::vector<RationalAngle>& angles() const { return angles_; }
  long N() const { return N_; }
  Rational theta0() const { return edges_[0].direction.multiple; }
  Real area() const;
  Real perimeter() const;

  // g applied to the polygon, re-ordered counterclockwise. Edge k of the
  // result comes from side source_side(g, k) of this polygon.
  Polygon transformed(const Dihedral& g) const;
  size_t source_side(const Dihedral& g, size_t k) const;
  size_t source_vertex(const Dihedral& g, size_t k) const;
  // reflection of G_P in the line of side i
  Dihedral side_reflection(size_t i) const;

  Polygon normalized() const;
  std::string key() const;
  // triangles as vertex index triples, counterclockwise
  const std::vector<std::array<size_t, 3>>& triangulation() const { return triangles_; }

 private:
  std::vector<Edge> edges_;
  std::vector<Point> vertices_;
  std::vector<Vec2> coords_;
  std::vector<RationalAngle> angles_;
  std::vector<std::array<size_t, 3>> triangles_;
  long N_ = 1;
};

struct UnitSide {
  size_t opposite_angle = 0;
};

// Triangle with the given angles at vertices 0, 1, 2. The side opposite
// angle `unit` has length 1.
Polygon triangle_from_angles(const RationalAngle& a, const RationalAngle& b, const RationalAngle& c,
                             size_t unit = 0);

AngleData angle_data(const Polygon& P);

struct MinusIdScreen {
  bool in_group;
  std::string reason;  // even_N | even_angle | external_even_angle_pair | none
  std::vector<std::string> triggers;
};

// Without external-side data only the group test applies; with it, the
// even-angle triggers are reported first.
MinusIdScreen minus_id_screen(const Polygon& P, const std::optional<std::vector<bool>>& external = std::nullopt);

// Angle swept counterclockwise from side i to side j at the polygon
// boundary, as a direction difference reduced mod 1.
Rational angle_between_sides(const Polygon& P, size_t i, size_t j);

}  // namespace flat
