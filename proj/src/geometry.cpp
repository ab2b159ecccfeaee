#include "flat/geometry.hpp"

namespace flat {

Real real_part(const Cyclotomic& z) { return Real::real_part_of(z); }
Real imag_part(const Cyclotomic& z) { return Real::imag_part_of(z); }
Vec2 to_vec(const Cyclotomic& z) { return {real_part(z), imag_part(z)}; }
Cyclotomic to_point(const Vec2& v) { return v.x.value() + v.y.value() * Cyclotomic::imaginary_unit(); }

Real cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Real dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a).sign(); }

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  if (orient(a, b, p) != 0) return false;
  return dot(p - a, p - b).sign() <= 0;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

namespace {
bool separates(const Vec2* t, const Vec2* u) {
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = t[i];
    const Vec2& b = t[(i + 1) % 3];
    bool all_right = true;
    for (int k = 0; k < 3 && all_right; ++k)
      if (orient(a, b, u[k]) > 0) all_right = false;
    if (all_right) return true;
  }
  return false;
}
}  // namespace

bool triangles_overlap(const Vec2* t, const Vec2* u) { return !separates(t, u) && !separates(u, t); }

}  // namespace flat
