#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flat/unfolding.hpp"

namespace flat {

struct SurfacePoint {
  size_t face = 0;
  Point coords;  // chart coordinates of that face
};

// Corner (face, vertex) of the given point class.
SurfacePoint vertex_point(const TranslationSurface& M, long cone);

struct LeafSegment {
  size_t face;
  Real y, x0, x1;  // rotated chart coordinates, x0 < x1
};

struct SaddleConnection {
  long start_cone, end_cone;
  Real length;
  Vec2 holonomy;  // unrotated coordinates
  std::vector<LeafSegment> segments;
  std::vector<long> interior_marked;  // regular vertex classes passed through
};

// Trapezoid of one face between an entering and an exiting edge.
struct Piece {
  size_t face, enter_edge, exit_edge;
  Real lo, hi;          // rotated heights
  Real w_lo, w_hi;      // widths at lo and hi
  size_t next;          // piece reached by flowing right
  size_t subcylinder;
};

struct Subcylinder {
  std::vector<size_t> pieces;
  Real height, circumference;
  bool top_singular = false, bottom_singular = false;
  long above = -1, below = -1;
  size_t cylinder = 0;
  Real offset;  // height of its bottom above the cylinder's bottom boundary
};

struct Cylinder {
  Real circumference, height;
  std::vector<size_t> subcylinders;  // bottom to top
  std::vector<size_t> bottom_connections, top_connections;
  bool closed_torus = false;  // no boundary: every leaf is closed
  Real area() const { return circumference * height; }
};

struct Decomposition {
  RationalAngle direction;
  Cyclotomic rotation;  // exp(-i*theta*pi)
  std::vector<Cylinder> cylinders;
  std::vector<SaddleConnection> saddle_connections;
  std::vector<Piece> pieces;
  std::vector<Subcylinder> subcylinders;
  Real total_area;
};

struct NotShownPeriodic {
  std::string reason;
  double traced_length = 0;
};

using DecompositionResult = std::variant<Decomposition, NotShownPeriodic>;

double default_length_bound(const TranslationSurface& M);

// Decomposes M into cylinders in direction theta, or reports that some leaf
// from a vertex did not close within length_bound.
DecompositionResult cylinder_decomposition(const TranslationSurface& M, const RationalAngle& theta,
                                           std::optional<double> length_bound = std::nullopt);

struct HeightSplit {
  Real h1, h;
  bool rational;             // h1/h in Q
  bool complement_rational;  // (h - h1)/h in Q
  size_t cylinder;
};

// Throws DomainError when p lies on a cylinder boundary.
HeightSplit height_split(const TranslationSurface& M, const Decomposition& D, const SurfacePoint& p);

// Copy of M rotated by theta (every chart multiplied by exp(i*theta*pi)).
TranslationSurface rotated(const TranslationSurface& M, const RationalAngle& theta);

}  // namespace flat
