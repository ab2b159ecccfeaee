#include "flat/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flat {

Point Edge::vector() const { return length.value() * Cyclotomic::exp_pi_i(direction.multiple.mod(2)); }

Dihedral Dihedral::rotation(long N, long j) { return {N, false, ((j % N) + N) % N}; }
Dihedral Dihedral::reflection_at(long N, long j) { return {N, true, ((j % N) + N) % N}; }

std::vector<Dihedral> Dihedral::all(long N) {
  std::vector<Dihedral> r;
  for (long j = 0; j < N; ++j) r.push_back(rotation(N, j));
  for (long j = 0; j < N; ++j) r.push_back(reflection_at(N, j));
  return r;
}

Dihedral Dihedral::operator*(const Dihedral& o) const {
  if (N != o.N) throw DomainError("dihedral order mismatch");
  if (!reflection && !o.reflection) return rotation(N, index + o.index);
  if (!reflection && o.reflection) return reflection_at(N, o.index + index);
  if (reflection && !o.reflection) return reflection_at(N, index - o.index);
  return rotation(N, index - o.index);
}

Dihedral Dihedral::inverse() const { return reflection ? *this : rotation(N, -index); }

std::string Dihedral::label() const { return (reflection ? "s" : "r") + std::to_string(index); }

Dihedral Dihedral::parse(long N, const std::string& label) {
  if (label.size() < 2 || (label[0] != 'r' && label[0] != 's')) throw DomainError("bad group label '" + label + "'");
  long j = std::stol(label.substr(1));
  if (j < 0 || j >= N) throw DomainError("group label out of range '" + label + "'");
  return label[0] == 'r' ? rotation(N, j) : reflection_at(N, j);
}

Point Dihedral::apply(const Point& z, const Rational& theta0) const {
  if (!reflection) return index == 0 ? z : Cyclotomic::zeta(N, index) * z;
  Rational twice = Rational(2) * theta0 + Rational(2 * index, N);
  return Cyclotomic::exp_pi_i(twice.mod(2)) * z.conj();
}

Rational Dihedral::apply_direction(const Rational& d, const Rational& theta0) const {
  if (!reflection) return (d + Rational(2 * index, N)).mod(2);
  return (Rational(2) * theta0 + Rational(2 * index, N) - d).mod(2);
}

namespace {

// turn from direction a to direction b, in (-1, 1]
Rational turn(const Rational& a, const Rational& b) {
  Rational t = (b - a).mod(2);
  if (t > Rational(1)) t -= Rational(2);
  return t;
}

bool point_in_closed_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

std::vector<std::array<size_t, 3>> ear_clip(const std::vector<Vec2>& v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::array<size_t, 3>> out;
  while (idx.size() > 3) {
    bool clipped = false;
    for (size_t k = 0; k < idx.size() && !clipped; ++k) {
      size_t a = idx[(k + idx.size() - 1) % idx.size()], b = idx[k], c = idx[(k + 1) % idx.size()];
      if (orient(v[a], v[b], v[c]) <= 0) continue;
      bool empty = true;
      for (size_t o : idx) {
        if (o == a || o == b || o == c) continue;
        if (point_in_closed_triangle(v[o], v[a], v[b], v[c])) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      out.push_back({a, b, c});
      idx.erase(idx.begin() + k);
      clipped = true;
    }
    if (!clipped) {
      // drop a collinear vertex (angle pi) if that is what blocks progress
      bool dropped = false;
      for (size_t k = 0; k < idx.size() && !dropped; ++k) {
        size_t a = idx[(k + idx.size() - 1) % idx.size()], b = idx[k], c = idx[(k + 1) % idx.size()];
        if (orient(v[a], v[b], v[c]) == 0) {
          idx.erase(idx.begin() + k);
          dropped = true;
        }
      }
      if (!dropped) throw DomainError("triangulation failed");
    }
  }
  if (orient(v[idx[0]], v[idx[1]], v[idx[2]]) > 0) out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

}  // namespace

Polygon::Polygon(std::vector<Edge> edges) : edges_(std::move(edges)) {
  size_t n = edges_.size();
  if (n < 3) throw DomainError("polygon needs at least 3 edges");
  for (auto& e : edges_) {
    e.direction = e.direction.mod2();
    if (e.length.sign() <= 0) throw DomainError("edge length must be positive");
  }
  Point p;
  for (size_t i = 0; i < n; ++i) {
    vertices_.push_back(p);
    p += edges_[i].vector();
  }
  if (!p.is_zero()) throw DomainError("polygon does not close");
  Rational total;
  N_ = 1;
  for (size_t i = 0; i < n; ++i) {
    Rational t = turn(edges_[(i + n - 1) % n].direction.multiple, edges_[i].direction.multiple);
    if (t == Rational(1)) throw DomainError("degenerate vertex angle");
    total += t;
    RationalAngle a(Rational(1) - t);
    angles_.push_back(a);
    N_ = std::lcm(N_, a.denominator());
  }
  if (total != Rational(2)) throw DomainError("polygon is not simple and counterclockwise");
  for (const auto& v : vertices_) coords_.push_back(to_vec(v));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(coords_[i], coords_[(i + 1) % n], coords_[j], coords_[(j + 1) % n]))
        throw DomainError("polygon is not simple");
    }
  }
  triangles_ = ear_clip(coords_);
}

Real Polygon::area() const {
  Real s;
  size_t n = coords_.size();
  for (size_t i = 0; i < n; ++i) s += cross(coords_[i], coords_[(i + 1) % n]);
  return s * Real(Rational(1, 2));
}

Real Polygon::perimeter() const {
  Real s;
  for (const auto& e : edges_) s += e.length;
  return s;
}

size_t Polygon::source_side(const Dihedral& g, size_t k) const {
  return g.reflection ? size() - 1 - k : k;
}

size_t Polygon::source_vertex(const Dihedral& g, size_t k) const {
  return g.reflection ? (size() - k) % size() : k;
}

Polygon Polygon::transformed(const Dihedral& g) const {
  std::vector<Edge> out;
  Rational t0 = theta0();
  for (size_t k = 0; k < size(); ++k) {
    const Edge& e = edges_[source_side(g, k)];
    Rational d = g.apply_direction(e.direction.multiple, t0);
    if (g.reflection) d = (d + Rational(1)).mod(2);
    out.push_back({RationalAngle(d), e.length});
  }
  return Polygon(std::move(out));
}

Dihedral Polygon::side_reflection(size_t i) const {
  Rational j = (edges_[i].direction.multiple - theta0()) * Rational(N_);
  if (!j.is_integer()) throw DomainError("side direction outside the group");
  return Dihedral::reflection_at(N_, j.num_long());
}

std::string Polygon::key() const {
  std::ostringstream os;
  for (const auto& e : edges_) os << e.direction.str() << '|' << e.length.minimized().value().key() << ';';
  return os.str();
}

Polygon Polygon::normalized() const {
  std::optional<Polygon> best;
  std::string best_key;
  size_t n = size();
  for (size_t s = 0; s < n; ++s) {
    Rational rot = edges_[s].direction.multiple;
    Real scale = edges_[s].length.inverse();
    std::vector<Edge> e;
    for (size_t k = 0; k < n; ++k) {
      const Edge& src = edges_[(s + k) % n];
      e.push_back({RationalAngle((src.direction.multiple - rot).mod(2)), src.length * scale});
    }
    Polygon cand(std::move(e));
    std::string key = cand.key();
    if (!best || key < best_key) {
      best = std::move(cand);
      best_key = key;
    }
  }
  return *best;
}

Polygon triangle_from_angles(const RationalAngle& a, const RationalAngle& b, const RationalAngle& c, size_t unit) {
  if (a.multiple.sign() <= 0 || b.multiple.sign() <= 0 || c.multiple.sign() <= 0)
    throw DomainError("triangle angles must be positive");
  if (a.multiple + b.multiple + c.multiple != Rational(1)) throw DomainError("triangle angles must sum to pi");
  if (unit > 2) throw DomainError("unit side index out of range");
  // law of sines: side opposite each angle is proportional to its sine
  Real sa = Real::sin_pi(a.multiple), sb = Real::sin_pi(b.multiple), sc = Real::sin_pi(c.multiple);
  Real su = unit == 0 ? sa : (unit == 1 ? sb : sc);
  Real k = su.inverse();
  // A at the origin, AB along direction 0
  std::vector<Edge> e = {
      {RationalAngle(0), sc * k},
      {RationalAngle(Rational(1) - b.multiple), sa * k},
      {RationalAngle(Rational(1) + a.multiple), sb * k},
  };
  return Polygon(std::move(e));
}

AngleData angle_data(const Polygon& P) { return {P.angles(), P.N(), 2 * P.N()}; }

Rational angle_between_sides(const Polygon& P, size_t i, size_t j) {
  return (P.edges()[j].direction.multiple - P.edges()[i].direction.multiple).mod(1);
}

MinusIdScreen minus_id_screen(const Polygon& P, const std::optional<std::vector<bool>>& external) {
  MinusIdScreen r{P.N() % 2 == 0, "none", {}};
  bool even_angle = false;
  for (const auto& a : P.angles()) even_angle = even_angle || a.is_even();
  bool pair = false;
  if (external) {
    const auto& ext = *external;
    for (size_t i = 0; i < P.size() && !pair; ++i)
      for (size_t j = i + 1; j < P.size() && !pair; ++j)
        if (ext[i] && ext[j] && angle_between_sides(P, i, j).den_long() % 2 == 0) pair = true;
  }
  if (r.in_group) r.triggers.push_back("even_N");
  if (even_angle) r.triggers.push_back("even_angle");
  if (pair) r.triggers.push_back("external_even_angle_pair");
  if (external) {
    if (even_angle)
      r.reason = "even_angle";
    else if (pair)
      r.reason = "external_even_angle_pair";
    else if (r.in_group)
      r.reason = "even_N";
  } else if (r.in_group) {
    r.reason = "even_N";
  }
  return r;
}

}  // namespace flat
