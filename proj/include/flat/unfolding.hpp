#pragma once

#include <optional>
#include <vector>

#include "flat/polygon.hpp"

namespace flat {

struct EdgeRef {
  size_t face = 0, edge = 0;
  friend bool operator==(const EdgeRef& a, const EdgeRef& b) { return a.face == b.face && a.edge == b.edge; }
};

struct Face {
  Polygon polygon;                // chart geometry, vertex 0 at the chart origin
  std::optional<Dihedral> label;  // group element when unfolded from a polygon
  Point translation;              // display placement only
  std::vector<long> source_vertex;
  std::vector<long> source_side;
};

struct ConePoint {
  long k = 1;
  Rational total_angle;               // multiple of pi, equals 2k
  std::vector<EdgeRef> corners;       // (face, vertex index)
  long source_vertex = -1;            // vertex of the base polygon, if any
  bool is_singular() const { return k > 1; }
};

struct Topology {
  long V, E, F, chi, genus, sum_k_minus_1;
};

class TranslationSurface {
 public:
  // Validates the pairing and computes cone points.
  TranslationSurface(std::vector<Face> faces, std::vector<std::vector<EdgeRef>> pairing,
                     std::optional<Polygon> base = std::nullopt);

  const std::vector<Face>& faces() const { return faces_; }
  const EdgeRef& partner(const EdgeRef& e) const { return pairing_[e.face][e.edge]; }
  const std::vector<std::vector<EdgeRef>>& pairing() const { return pairing_; }
  const std::vector<ConePoint>& cone_points() const { return cones_; }
  long corner_class(size_t face, size_t vertex) const { return corner_class_[face][vertex]; }
  const std::optional<Polygon>& base() const { return base_; }
  long N() const { return base_ ? base_->N() : 0; }

  // Translation taking points of edge e in its face chart to the partner chart.
  Point shift(const EdgeRef& e) const;
  Real area() const;

  // Point class of vertex j of the base polygon in the copy labelled g.
  long point_class(const Dihedral& g, long j) const;
  // Action of G_P on point classes.
  long act(const Dihedral& h, long cone) const;
  size_t face_of(const Dihedral& g) const { return static_cast<size_t>(g.ordinal()); }

 private:
  std::vector<Face> faces_;
  std::vector<std::vector<EdgeRef>> pairing_;
  std::vector<ConePoint> cones_;
  std::vector<std::vector<long>> corner_class_;
  std::optional<Polygon> base_;
};

TranslationSurface unfold(const Polygon& P);
std::vector<ConePoint> cone_points(const TranslationSurface& M);
Topology genus(const TranslationSurface& M);

}  // namespace flat
