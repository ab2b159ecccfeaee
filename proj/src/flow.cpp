#include "flat/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace flat {

SurfacePoint vertex_point(const TranslationSurface& M, long cone) {
  const EdgeRef& c = M.cone_points().at(cone).corners.front();
  return {c.face, M.faces()[c.face].polygon.vertices()[c.edge]};
}

double default_length_bound(const TranslationSurface& M) {
  double d = 0;
  auto diam = [&](const Polygon& P) {
    for (const auto& a : P.vertices())
      for (const auto& b : P.vertices()) d = std::max(d, std::abs((a - b).approx()));
  };
  if (M.base())
    diam(*M.base());
  else
    for (const auto& f : M.faces()) diam(f.polygon);
  return 40 * d;
}

namespace {

struct FlowFace {
  std::vector<Vec2> v;
  std::vector<int> kind;  // sign of dy along each edge
  std::vector<Real> slope;
  std::vector<Vec2> shift;
  std::vector<bool> rightward;  // horizontal edge pointing in the flow direction
};

struct Hit {
  bool found = false, vertex = false;
  size_t index = 0;
  Real x;
};

struct Segment {
  size_t start_face, start_vertex, end_face, end_vertex;
  long start_cone, end_cone;
  Real length;
  std::vector<LeafSegment> parts;
};

class Flow {
 public:
  Flow(const TranslationSurface& M, const RationalAngle& theta) : M_(M) {
    rot_ = Cyclotomic::exp_pi_i((-theta.multiple).mod(2));
    Rational dth = theta.multiple;
    std::map<std::string, Real> inv_cache;
    for (size_t f = 0; f < M.faces().size(); ++f) {
      const Polygon& P = M.faces()[f].polygon;
      FlowFace ff;
      for (const auto& p : P.vertices()) ff.v.push_back(to_vec(rot_ * p));
      size_t n = P.size();
      for (size_t k = 0; k < n; ++k) {
        const Vec2& a = ff.v[k];
        const Vec2& b = ff.v[(k + 1) % n];
        Rational d = (P.edges()[k].direction.multiple - dth).mod(2);
        int kind = (d.is_zero() || d == Rational(1)) ? 0 : (d < Rational(1) ? 1 : -1);
        ff.kind.push_back(kind);
        ff.rightward.push_back(d.is_zero());
        if (kind != 0) {
          Real dy = b.y - a.y;
          std::string key = dy.value().key();
          auto it = inv_cache.find(key);
          if (it == inv_cache.end()) it = inv_cache.emplace(key, dy.inverse()).first;
          ff.slope.push_back((b.x - a.x) * it->second);
        } else {
          ff.slope.emplace_back();
        }
        ff.shift.push_back(to_vec(rot_ * M.shift({f, k})));
      }
      faces_.push_back(std::move(ff));
    }
  }

  const Cyclotomic& rotation() const { return rot_; }
  const FlowFace& face(size_t f) const { return faces_[f]; }
  size_t size(size_t f) const { return faces_[f].v.size(); }

  Real x_on_edge(size_t f, size_t k, const Real& y) const {
    const FlowFace& ff = faces_[f];
    return ff.v[k].x + (y - ff.v[k].y) * ff.slope[k];
  }

  bool y_in_open_range(size_t f, size_t k, const Real& y) const {
    const FlowFace& ff = faces_[f];
    const Real& a = ff.v[k].y;
    const Real& b = ff.v[(k + 1) % ff.v.size()].y;
    int s1 = compare(y, a), s2 = compare(y, b);
    return s1 * s2 < 0;
  }

  // First boundary point strictly to the right of (x, y) along the leaf.
  Hit first_hit(size_t f, const Real& x, const Real& y) const {
    const FlowFace& ff = faces_[f];
    Hit best;
    auto consider = [&](bool vertex, size_t idx, Real cx) {
      if (compare(cx, x) <= 0) return;
      if (best.found && compare(cx, best.x) >= 0) return;
      best.found = true;
      best.vertex = vertex;
      best.index = idx;
      best.x = std::move(cx);
    };
    for (size_t i = 0; i < ff.v.size(); ++i)
      if (ff.v[i].y == y) consider(true, i, ff.v[i].x);
    for (size_t k = 0; k < ff.v.size(); ++k) {
      if (ff.kind[k] == 0) continue;
      if (!y_in_open_range(f, k, y)) continue;
      consider(false, k, x_on_edge(f, k, y));
    }
    return best;
  }

  // The rightward direction leaves vertex i into the interior of face f.
  bool right_in_sector(size_t f, size_t i) const {
    const FlowFace& ff = faces_[f];
    size_t n = ff.v.size();
    int out = ff.kind[i], in = ff.kind[(i + n - 1) % n];
    const Rational& a = M_.faces()[f].polygon.angles()[i].multiple;
    if (a < Rational(1)) return out < 0 && in < 0;
    if (a > Rational(1)) return !(in >= 0 && out >= 0);
    return out < 0;
  }

 private:
  const TranslationSurface& M_;
  Cyclotomic rot_;
  std::vector<FlowFace> faces_;
};

struct EdgeKey {
  size_t face, edge;
  bool operator<(const EdgeKey& o) const { return face != o.face ? face < o.face : edge < o.edge; }
};

struct CutSets {
  std::map<EdgeKey, std::vector<Real>> heights;
};

}  // namespace

DecompositionResult cylinder_decomposition(const TranslationSurface& M, const RationalAngle& theta,
                                           std::optional<double> length_bound) {
  double bound = length_bound ? *length_bound : default_length_bound(M);
  Flow flow(M, theta);
  CutSets cuts;
  std::vector<Segment> segments;
  size_t nf = M.faces().size();

  // trace every rightward leaf leaving a vertex until it hits a vertex
  for (size_t f = 0; f < nf; ++f) {
    for (size_t i = 0; i < flow.size(f); ++i) {
      if (!flow.right_in_sector(f, i)) continue;
      Segment seg{f, i, 0, 0, M.corner_class(f, i), -1, Real(0), {}};
      size_t cf = f;
      Real x = flow.face(f).v[i].x, y = flow.face(f).v[i].y;
      double traced = 0;
      for (;;) {
        Hit h = flow.first_hit(cf, x, y);
        if (!h.found) throw DomainError("leaf escaped its face");
        Real dx = h.x - x;
        traced += dx.to_double();
        seg.length += dx;
        seg.parts.push_back({cf, y, x, h.x});
        if (h.vertex) {
          seg.end_face = cf;
          seg.end_vertex = h.index;
          seg.end_cone = M.corner_class(cf, h.index);
          break;
        }
        if (flow.face(cf).kind[h.index] != 1) throw DomainError("leaf left through a non-exiting edge");
        if (traced > bound) return NotShownPeriodic{"leaf from a vertex exceeded the length bound", traced};
        const Vec2& sh = flow.face(cf).shift[h.index];
        EdgeRef o = M.partner({cf, h.index});
        x = h.x + sh.x;
        y = y + sh.y;
        cf = o.face;
        cuts.heights[{o.face, o.edge}].push_back(y);
      }
      segments.push_back(std::move(seg));
    }
  }
  // horizontal boundary edges are leaf segments too
  for (size_t f = 0; f < nf; ++f) {
    const FlowFace& ff = flow.face(f);
    size_t n = ff.v.size();
    for (size_t k = 0; k < n; ++k) {
      if (!ff.rightward[k]) continue;
      size_t k1 = (k + 1) % n;
      Real len = ff.v[k1].x - ff.v[k].x;
      segments.push_back({f, k, f, k1, M.corner_class(f, k), M.corner_class(f, k1), len,
                          {{f, ff.v[k].y, ff.v[k].x, ff.v[k1].x}}});
    }
  }

  Decomposition D;
  D.direction = theta;
  D.rotation = flow.rotation();
  const auto& cones = M.cone_points();
  std::vector<std::vector<size_t>> outgoing(cones.size());
  for (size_t s = 0; s < segments.size(); ++s) outgoing[segments[s].start_cone].push_back(s);
  for (size_t c = 0; c < cones.size(); ++c)
    if (static_cast<long>(outgoing[c].size()) != cones[c].k)
      throw DomainError("separatrix count does not match cone angle");

  // saddle connections: chains between singular points through marked points
  Cyclotomic unrot = flow.rotation().conj();
  for (size_t c = 0; c < cones.size(); ++c) {
    if (!cones[c].is_singular()) continue;
    for (size_t s0 : outgoing[c]) {
      SaddleConnection sc{static_cast<long>(c), -1, Real(0), {}, {}, {}};
      size_t s = s0;
      double traced = 0;
      for (size_t guard = 0;; ++guard) {
        const Segment& seg = segments[s];
        sc.length += seg.length;
        traced += seg.length.to_double();
        for (const auto& p : seg.parts) sc.segments.push_back(p);
        if (traced > bound) return NotShownPeriodic{"saddle connection exceeded the length bound", traced};
        if (cones[seg.end_cone].is_singular() || guard > segments.size()) {
          sc.end_cone = seg.end_cone;
          break;
        }
        sc.interior_marked.push_back(seg.end_cone);
        s = outgoing[seg.end_cone].front();
      }
      sc.holonomy = to_vec(unrot * sc.length.value());
      D.saddle_connections.push_back(std::move(sc));
    }
  }

  // elementary intervals on entering edges
  std::map<EdgeKey, std::vector<Real>> levels;
  for (size_t f = 0; f < nf; ++f) {
    const FlowFace& ff = flow.face(f);
    size_t n = ff.v.size();
    for (size_t k = 0; k < n; ++k) {
      if (ff.kind[k] != -1) continue;
      std::vector<Real> h = {ff.v[(k + 1) % n].y, ff.v[k].y};
      auto it = cuts.heights.find({f, k});
      if (it != cuts.heights.end())
        for (const auto& y : it->second) h.push_back(y);
      std::sort(h.begin(), h.end(), [](const Real& a, const Real& b) { return compare(a, b) < 0; });
      std::vector<Real> u;
      for (auto& y : h)
        if (u.empty() || !(u.back() == y)) u.push_back(std::move(y));
      levels[{f, k}] = std::move(u);
    }
  }
  std::map<EdgeKey, std::vector<size_t>> piece_index;
  for (auto& [key, hs] : levels) {
    for (size_t t = 0; t + 1 < hs.size(); ++t) {
      Piece p{key.face, key.edge, 0, hs[t], hs[t + 1], Real(0), Real(0), 0, 0};
      Real mid = (p.lo + p.hi) * Real(Rational(1, 2));
      Hit h = flow.first_hit(key.face, flow.x_on_edge(key.face, key.edge, mid), mid);
      if (!h.found || h.vertex || flow.face(key.face).kind[h.index] != 1)
        throw DomainError("strip does not reach an exiting edge");
      p.exit_edge = h.index;
      p.w_lo = flow.x_on_edge(p.face, p.exit_edge, p.lo) - flow.x_on_edge(p.face, p.enter_edge, p.lo);
      p.w_hi = flow.x_on_edge(p.face, p.exit_edge, p.hi) - flow.x_on_edge(p.face, p.enter_edge, p.hi);
      piece_index[key].push_back(D.pieces.size());
      D.pieces.push_back(std::move(p));
    }
  }
  // first-return permutation on pieces
  std::vector<int> indegree(D.pieces.size(), 0);
  for (auto& p : D.pieces) {
    EdgeRef o = M.partner({p.face, p.exit_edge});
    const Real& ty = flow.face(p.face).shift[p.exit_edge].y;
    Real lo = p.lo + ty, hi = p.hi + ty;
    const auto& cand = piece_index[{o.face, o.edge}];
    auto it = std::lower_bound(cand.begin(), cand.end(), lo, [&](size_t a, const Real& v) {
      return compare(D.pieces[a].lo, v) < 0;
    });
    if (it == cand.end() || !(D.pieces[*it].lo == lo) || !(D.pieces[*it].hi == hi))
      throw DomainError("interval exchange is not a bijection on elementary intervals");
    p.next = *it;
    ++indegree[*it];
  }
  for (int d : indegree)
    if (d != 1) throw DomainError("interval exchange is not a bijection on elementary intervals");

  Real area;
  for (const auto& p : D.pieces) area += (p.w_lo + p.w_hi) * (p.hi - p.lo);
  area = area * Real(Rational(1, 2));
  D.total_area = area;
  if (!(area == M.area())) throw DomainError("cylinder areas do not add up to the surface area");

  std::vector<bool> seen(D.pieces.size(), false);
  for (size_t s = 0; s < D.pieces.size(); ++s) {
    if (seen[s]) continue;
    Subcylinder C;
    size_t cur = s;
    while (!seen[cur]) {
      seen[cur] = true;
      D.pieces[cur].subcylinder = D.subcylinders.size();
      C.pieces.push_back(cur);
      cur = D.pieces[cur].next;
    }
    Real wl, wh;
    for (size_t q : C.pieces) {
      wl += D.pieces[q].w_lo;
      wh += D.pieces[q].w_hi;
    }
    if (!(wl == wh)) throw DomainError("subcylinder circumference mismatch");
    C.circumference = wl;
    C.height = D.pieces[s].hi - D.pieces[s].lo;
    D.subcylinders.push_back(std::move(C));
  }

  auto vertex_on = [&](size_t f, size_t enter, size_t exit, const Real& y, bool& singular) {
    const FlowFace& ff = flow.face(f);
    Real xa = flow.x_on_edge(f, enter, y), xb = flow.x_on_edge(f, exit, y);
    for (size_t i = 0; i < ff.v.size(); ++i) {
      if (!(ff.v[i].y == y)) continue;
      if (compare(ff.v[i].x, xa) < 0 || compare(ff.v[i].x, xb) > 0) continue;
      if (cones[M.corner_class(f, i)].is_singular()) singular = true;
    }
  };
  for (auto& C : D.subcylinders) {
    for (size_t q : C.pieces) {
      const Piece& p = D.pieces[q];
      vertex_on(p.face, p.enter_edge, p.exit_edge, p.hi, C.top_singular);
      vertex_on(p.face, p.enter_edge, p.exit_edge, p.lo, C.bottom_singular);
    }
  }

  // pieces of face f whose bottom (or top) segment contains (x, y) in its interior
  auto piece_at = [&](size_t f, const Real& x, const Real& y, bool bottom) -> long {
    for (size_t q = 0; q < D.pieces.size(); ++q) {
      const Piece& p = D.pieces[q];
      if (p.face != f) continue;
      if (!((bottom ? p.lo : p.hi) == y)) continue;
      Real xa = flow.x_on_edge(f, p.enter_edge, y), xb = flow.x_on_edge(f, p.exit_edge, y);
      if (compare(xa, x) < 0 && compare(x, xb) < 0) return static_cast<long>(q);
    }
    return -1;
  };
  // the piece on the other side of a leaf point (x, y) in face f
  auto across = [&](size_t f, const Real& x, const Real& y, bool upward) -> long {
    long q = piece_at(f, x, y, upward);
    if (q >= 0) return q;
    const FlowFace& ff = flow.face(f);
    size_t n = ff.v.size();
    for (size_t k = 0; k < n; ++k) {
      if (ff.kind[k] != 0 || !(ff.v[k].y == y)) continue;
      // leftward edge bounds the face from above, rightward from below
      if (ff.rightward[k] == upward) continue;
      const Real& a = ff.v[k].x;
      const Real& b = ff.v[(k + 1) % n].x;
      Real lo = compare(a, b) < 0 ? a : b, hi = compare(a, b) < 0 ? b : a;
      if (!(compare(lo, x) < 0 && compare(x, hi) < 0)) continue;
      EdgeRef o = M.partner({f, k});
      const Vec2& sh = ff.shift[k];
      return piece_at(o.face, x + sh.x, y + sh.y, upward);
    }
    return -1;
  };
  auto sample_x = [&](const Piece& p, const Real& y, const Real& w) {
    const FlowFace& ff = flow.face(p.face);
    Real xa = flow.x_on_edge(p.face, p.enter_edge, y);
    for (long den = 2;; ++den) {
      for (long num = 1; num < den; ++num) {
        Real x = xa + w * Real(Rational(num, den));
        bool clash = false;
        for (const auto& v : ff.v)
          if (v.y == y && v.x == x) clash = true;
        if (!clash) return x;
      }
    }
  };
  for (size_t c = 0; c < D.subcylinders.size(); ++c) {
    Subcylinder& C = D.subcylinders[c];
    if (C.top_singular) continue;
    const Piece* top = nullptr;
    for (size_t q : C.pieces)
      if (D.pieces[q].w_hi.sign() > 0) {
        top = &D.pieces[q];
        break;
      }
    if (!top) throw DomainError("subcylinder without a top segment");
    Real x = sample_x(*top, top->hi, top->w_hi);
    long q = across(top->face, x, top->hi, true);
    if (q < 0) throw DomainError("no piece above a regular leaf");
    size_t up = D.pieces[q].subcylinder;
    if (D.subcylinders[up].below >= 0 && D.subcylinders[up].below != static_cast<long>(c))
      throw DomainError("inconsistent cylinder stacking");
    C.above = static_cast<long>(up);
    D.subcylinders[up].below = static_cast<long>(c);
  }

  std::vector<bool> used(D.subcylinders.size(), false);
  auto build = [&](size_t start, bool torus) {
    Cylinder Z;
    Z.closed_torus = torus;
    Z.circumference = D.subcylinders[start].circumference;
    size_t cur = start;
    Real offset;
    for (;;) {
      Subcylinder& C = D.subcylinders[cur];
      used[cur] = true;
      C.cylinder = D.cylinders.size();
      C.offset = offset;
      offset += C.height;
      if (!(C.circumference == Z.circumference)) throw DomainError("stacked subcylinders differ in circumference");
      Z.subcylinders.push_back(cur);
      if (C.above < 0 || used[C.above]) break;
      cur = static_cast<size_t>(C.above);
    }
    Z.height = offset;
    D.cylinders.push_back(std::move(Z));
  };
  for (size_t c = 0; c < D.subcylinders.size(); ++c)
    if (D.subcylinders[c].below < 0) build(c, false);
  for (size_t c = 0; c < D.subcylinders.size(); ++c)
    if (!used[c]) build(c, true);

  // boundary saddle connections
  for (size_t s = 0; s < D.saddle_connections.size(); ++s) {
    const LeafSegment& seg = D.saddle_connections[s].segments.front();
    Real xm = (seg.x0 + seg.x1) * Real(Rational(1, 2));
    long a = across(seg.face, xm, seg.y, true);
    long b = across(seg.face, xm, seg.y, false);
    if (a >= 0) {
      auto& v = D.cylinders[D.subcylinders[D.pieces[a].subcylinder].cylinder].bottom_connections;
      v.push_back(s);
    }
    if (b >= 0) {
      auto& v = D.cylinders[D.subcylinders[D.pieces[b].subcylinder].cylinder].top_connections;
      v.push_back(s);
    }
  }
  return D;
}

HeightSplit height_split(const TranslationSurface& M, const Decomposition& D, const SurfacePoint& p) {
  Flow flow(M, D.direction);
  Vec2 q = to_vec(D.rotation * p.coords);
  std::optional<std::pair<size_t, Real>> found;
  bool ambiguous = false;
  for (const auto& pc : D.pieces) {
    if (pc.face != p.face) continue;
    if (compare(q.y, pc.lo) < 0 || compare(q.y, pc.hi) > 0) continue;
    Real xa = flow.x_on_edge(pc.face, pc.enter_edge, q.y), xb = flow.x_on_edge(pc.face, pc.exit_edge, q.y);
    if (compare(q.x, xa) < 0 || compare(q.x, xb) > 0) continue;
    const Subcylinder& C = D.subcylinders[pc.subcylinder];
    Real h1 = C.offset + (q.y - pc.lo);
    if (!found) {
      found = std::make_pair(C.cylinder, h1);
    } else if (found->first != C.cylinder || !(found->second == h1)) {
      ambiguous = true;
    }
  }
  if (!found) throw DomainError("point not found in any cylinder");
  const Cylinder& Z = D.cylinders[found->first];
  if (ambiguous || Z.closed_torus || found->second.is_zero() || found->second == Z.height)
    throw DomainError("point lies on a cylinder boundary");
  HeightSplit s{found->second, Z.height, false, false, found->first};
  s.rational = is_rational(s.h1 / s.h).has_value();
  s.complement_rational = is_rational((s.h - s.h1) / s.h).has_value();
  return s;
}

TranslationSurface rotated(const TranslationSurface& M, const RationalAngle& theta) {
  std::vector<Face> faces;
  Cyclotomic r = Cyclotomic::exp_pi_i(theta.multiple.mod(2));
  for (const auto& f : M.faces()) {
    std::vector<Edge> e;
    for (const auto& ed : f.polygon.edges())
      e.push_back({RationalAngle((ed.direction.multiple + theta.multiple).mod(2)), ed.length});
    faces.push_back({Polygon(std::move(e)), f.label, r * f.translation, f.source_vertex, f.source_side});
  }
  return TranslationSurface(std::move(faces), M.pairing());
}

}  // namespace flat
