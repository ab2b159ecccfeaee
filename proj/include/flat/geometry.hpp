#pragma once

#include "flat/real.hpp"

namespace flat {

// Plane points are complex cyclotomic numbers; Vec2 is their real coordinate pair.
using Point = Cyclotomic;

struct Vec2 {
  Real x, y;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

Real real_part(const Cyclotomic& z);
Real imag_part(const Cyclotomic& z);
Vec2 to_vec(const Cyclotomic& z);
Cyclotomic to_point(const Vec2& v);

Real cross(const Vec2& a, const Vec2& b);
Real dot(const Vec2& a, const Vec2& b);
// sign of cross(b - a, c - a)
int orient(const Vec2& a, const Vec2& b, const Vec2& c);
bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b);
// closed segments share at least one point
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
// the open interiors of two triangles (counterclockwise) overlap
bool triangles_overlap(const Vec2* t, const Vec2* u);

}  // namespace flat
