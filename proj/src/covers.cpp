#include "flat/covers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace flat {

Point Motion::apply(const Point& z) const {
  Point e = Cyclotomic::exp_pi_i(angle.mod(2));
  return e * (reflect ? z.conj() : z) + tau;
}

Rational Motion::apply_direction(const Rational& d) const {
  return (reflect ? angle - d : angle + d).mod(2);
}

Motion Motion::reflected(const Point& p, const Rational& phi) const {
  Point e = Cyclotomic::exp_pi_i((Rational(2) * phi).mod(2));
  return {!reflect, (Rational(2) * phi - angle).mod(2), e * (tau - p).conj() + p};
}

Motion compose(const Motion& a, const Motion& b) {
  Point e = Cyclotomic::exp_pi_i(a.angle.mod(2));
  Rational ang = a.reflect ? a.angle - b.angle : a.angle + b.angle;
  return {a.reflect != b.reflect, ang.mod(2), e * (a.reflect ? b.tau.conj() : b.tau) + a.tau};
}

Motion inverse(const Motion& m) {
  if (m.reflect) return {true, m.angle, -(Cyclotomic::exp_pi_i(m.angle.mod(2)) * m.tau.conj())};
  Rational back = (-m.angle).mod(2);
  return {false, back, -(Cyclotomic::exp_pi_i(back) * m.tau)};
}

std::string motion_key(const Motion& m) {
  return (m.reflect ? "s" : "r") + m.angle.str() + "@" + m.tau.minimized().key();
}

namespace {

std::string point_key(const Point& p) { return p.minimized().key(); }

}  // namespace

Dihedral Motion::label(const Polygon& P) const {
  long N = P.N();
  Rational j = reflect ? (angle - Rational(2) * P.theta0()) * Rational(N, 2) : angle * Rational(N, 2);
  if (!j.is_integer()) throw DomainError("motion is not in the reflection group of the base polygon");
  long idx = j.mod(N).num_long();
  return reflect ? Dihedral::reflection_at(N, idx) : Dihedral::rotation(N, idx);
}

Tiling verify_tiling(const Polygon& P, const std::vector<TilingStep>& steps) {
  std::vector<Motion> motions = {Motion{false, Rational(0), Point()}};
  for (const auto& s : steps) {
    if (s.parent >= motions.size()) throw DomainError("tiling step refers to a copy not yet placed");
    if (s.side >= P.size()) throw DomainError("tiling step refers to a missing side");
    const Motion& m = motions[s.parent];
    Point p = m.apply(P.vertices()[s.side]);
    Rational phi = m.apply_direction(P.edges()[s.side].direction.multiple).mod(1);
    motions.push_back(m.reflected(p, phi));
  }
  Tiling t = verify_motions(P, motions);
  t.steps = steps;
  return t;
}

Tiling verify_motions(const Polygon& P, const std::vector<Motion>& motions) {
  if (motions.empty()) throw DomainError("tiling needs at least one copy");
  size_t n = P.size(), nc = motions.size();
  std::vector<std::vector<Point>> copies;
  std::vector<std::vector<Vec2>> coords;
  std::vector<std::vector<Rational>> dirs;  // direction of side k traversed from vertex k to k+1
  for (const auto& m : motions) {
    m.label(P);
    std::vector<Point> v;
    std::vector<Vec2> c;
    std::vector<Rational> d;
    for (size_t k = 0; k < n; ++k) {
      v.push_back(m.apply(P.vertices()[k]));
      c.push_back(to_vec(v.back()));
      d.push_back(m.apply_direction(P.edges()[k].direction.multiple));
    }
    copies.push_back(std::move(v));
    coords.push_back(std::move(c));
    dirs.push_back(std::move(d));
  }

  // disjoint interiors
  for (size_t a = 0; a < nc; ++a)
    for (size_t b = a + 1; b < nc; ++b)
      for (const auto& ta : P.triangulation())
        for (const auto& tb : P.triangulation()) {
          Vec2 u[3] = {coords[a][ta[0]], coords[a][ta[1]], coords[a][ta[2]]};
          Vec2 w[3] = {coords[b][tb[0]], coords[b][tb[1]], coords[b][tb[2]]};
          if (motions[a].reflect) std::swap(u[1], u[2]);
          if (motions[b].reflect) std::swap(w[1], w[2]);
          if (triangles_overlap(u, w)) throw DomainError("copies overlap");
        }

  // shared sides
  std::vector<std::vector<std::string>> keys(nc);
  for (size_t c = 0; c < nc; ++c)
    for (size_t k = 0; k < n; ++k) keys[c].push_back(point_key(copies[c][k]));
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<size_t, size_t>>> by_ends;
  for (size_t c = 0; c < nc; ++c)
    for (size_t k = 0; k < n; ++k) {
      auto a = keys[c][k], b = keys[c][(k + 1) % n];
      if (b < a) std::swap(a, b);
      by_ends[{a, b}].push_back({c, k});
    }
  std::vector<std::vector<TilingSide>> sides(nc, std::vector<TilingSide>(n));
  for (const auto& [ends, list] : by_ends) {
    if (list.size() > 2) throw DomainError("copies overlap");
    if (list.size() < 2) continue;
    auto [c, k] = list[0];
    auto [c2, k2] = list[1];
    if (c == c2) throw DomainError("copy glued to itself");
    Motion r = motions[c].reflected(copies[c][k], dirs[c][k].mod(1));
    if (!(r == motions[c2])) throw DomainError("adjacent copies are not mirror images across their common side");
    sides[c][k] = {static_cast<long>(c2), static_cast<long>(k2)};
    sides[c2][k2] = {static_cast<long>(c), static_cast<long>(k)};
  }
  // sides meeting along a segment must coincide
  for (size_t a = 0; a < nc; ++a)
    for (size_t k = 0; k < n; ++k)
      for (size_t b = a + 1; b < nc; ++b)
        for (size_t l = 0; l < n; ++l) {
          if (sides[a][k].partner_copy == static_cast<long>(b) && sides[a][k].partner_side == static_cast<long>(l))
            continue;
          if (dirs[a][k].mod(1) != dirs[b][l].mod(1)) continue;
          const Vec2 &p = coords[a][k], &q = coords[a][(k + 1) % n];
          const Vec2 &r = coords[b][l], &s = coords[b][(l + 1) % n];
          if (orient(p, q, r) != 0 || orient(p, q, s) != 0) continue;
          Vec2 d = q - p;
          Real len2 = dot(d, d), tr = dot(r - p, d), ts = dot(s - p, d);
          Real lo = compare(tr, ts) < 0 ? tr : ts, hi = compare(tr, ts) < 0 ? ts : tr;
          Real zero;
          Real olo = compare(lo, zero) > 0 ? lo : zero, ohi = compare(hi, len2) < 0 ? hi : len2;
          if (compare(olo, ohi) < 0) throw DomainError("copies meet along part of a side");
        }

  // connectivity
  std::vector<bool> seen(nc, false);
  std::vector<size_t> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    size_t c = stack.back();
    stack.pop_back();
    for (const auto& s : sides[c])
      if (!s.external() && !seen[s.partner_copy]) {
        seen[s.partner_copy] = true;
        stack.push_back(static_cast<size_t>(s.partner_copy));
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw DomainError("copies do not form a connected union");

  Tiling t{P, {}, motions, copies, sides, {}, P, Point(), {}, {}};

  // tiling points
  std::map<std::string, size_t> point_index;
  std::vector<std::vector<size_t>> vpt(nc, std::vector<size_t>(n));
  for (size_t c = 0; c < nc; ++c)
    for (size_t k = 0; k < n; ++k) {
      auto it = point_index.find(keys[c][k]);
      if (it == point_index.end()) {
        it = point_index.emplace(keys[c][k], t.points.size()).first;
        TilingPoint tp;
        tp.position = copies[c][k];
        tp.base_vertex = static_cast<long>(k);
        t.points.push_back(tp);
      }
      TilingPoint& tp = t.points[it->second];
      if (tp.base_vertex != static_cast<long>(k)) throw DomainError("copies meet at a point from different corners");
      tp.corners.push_back({c, k});
      tp.total += P.angles()[k].multiple;
      vpt[c][k] = it->second;
    }
  for (auto& tp : t.points) {
    if (tp.total > Rational(2)) throw DomainError("copies overlap");
    tp.interior = tp.total == Rational(2);
  }

  // outline: external sides oriented with the union on the left
  struct Directed {
    size_t from, to, copy, side;
    Rational dir;
  };
  std::vector<Directed> ext;
  for (size_t c = 0; c < nc; ++c)
    for (size_t k = 0; k < n; ++k) {
      if (!sides[c][k].external()) continue;
      size_t a = vpt[c][k], b = vpt[c][(k + 1) % n];
      if (motions[c].reflect)
        ext.push_back({b, a, c, k, (dirs[c][k] + Rational(1)).mod(2)});
      else
        ext.push_back({a, b, c, k, dirs[c][k].mod(2)});
    }
  std::map<size_t, size_t> starting;
  for (size_t i = 0; i < ext.size(); ++i)
    if (!starting.emplace(ext[i].from, i).second) throw DomainError("outline is not simple");
  std::vector<size_t> cycle;
  size_t cur = 0;
  do {
    cycle.push_back(cur);
    auto it = starting.find(ext[cur].to);
    if (it == starting.end()) throw DomainError("outline is not closed");
    cur = it->second;
  } while (cur != 0 && cycle.size() <= ext.size());
  if (cycle.size() != ext.size()) throw DomainError("outline is not simple");
  // rotate so that the cycle starts at a corner
  size_t m = cycle.size(), start = m;
  for (size_t i = 0; i < m; ++i)
    if (ext[cycle[i]].dir != ext[cycle[(i + m - 1) % m]].dir) {
      start = i;
      break;
    }
  if (start == m) throw DomainError("outline is degenerate");
  std::rotate(cycle.begin(), cycle.begin() + static_cast<long>(start), cycle.end());
  std::vector<Edge> qedges;
  for (size_t i = 0; i < m; ++i) {
    const Directed& e = ext[cycle[i]];
    Real len = P.edges()[e.side].length;
    if (i == 0 || e.dir != ext[cycle[i - 1]].dir) {
      qedges.push_back({RationalAngle(e.dir), len});
      t.outline_points.push_back(e.from);
      t.outline_sides.emplace_back();
    } else {
      qedges.back().length += len;
      if (t.points[e.from].total != Rational(1)) throw DomainError("outline is not simple");
    }
    t.outline_sides.back().push_back({e.copy, e.side});
  }
  t.outline = Polygon(std::move(qedges));
  t.outline_origin = t.points[t.outline_points[0]].position;
  for (size_t v = 0; v < t.outline_points.size(); ++v) {
    TilingPoint& tp = t.points[t.outline_points[v]];
    if (tp.total != t.outline.angles()[v].multiple) throw DomainError("outline is not simple");
    tp.outline_vertex = static_cast<long>(v);
  }
  return t;
}

Tiling compose_tilings(const Tiling& outer, const Tiling& inner) {
  if (outer.base.key() != inner.outline.key())
    throw DomainError("outer tiling base is not the inner tiling outline");
  std::vector<Motion> motions;
  Motion shift{false, Rational(0), -inner.outline_origin};
  for (const auto& mo : outer.motions)
    for (const auto& mi : inner.motions) motions.push_back(compose(mo, compose(shift, mi)));
  return verify_motions(inner.base, motions);
}

long riemann_hurwitz_chi(long d, long chi_base, long ramification) { return d * chi_base - ramification; }

long odd_multiplier(const RationalAngle& alpha) {
  long q = alpha.denominator(), k = 1;
  while (q % 2 == 0) {
    q /= 2;
    k *= 2;
  }
  return k;
}

namespace {

std::vector<Dihedral> generated(long N, const std::vector<Dihedral>& gens) {
  std::vector<Dihedral> out = {Dihedral::identity(N)};
  std::set<long> have = {0};
  for (size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Dihedral x = g * out[i];
      if (have.insert(x.ordinal()).second) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// edge list of h applied to Q, as (direction, length key) starting from some vertex
std::vector<std::pair<Rational, std::string>> image_edges(const Polygon& Q, const Dihedral& h, const Rational& theta0) {
  std::vector<std::pair<Rational, std::string>> out;
  size_t n = Q.size();
  for (size_t k = 0; k < n; ++k) {
    size_t src = h.reflection ? n - 1 - k : k;
    Rational d = h.apply_direction(Q.edges()[src].direction.multiple, theta0);
    if (h.reflection) d = (d + Rational(1)).mod(2);
    out.push_back({d, Q.edges()[src].length.minimized().value().key()});
  }
  return out;
}

bool cyclic_equal(const std::vector<std::pair<Rational, std::string>>& a,
                  const std::vector<std::pair<Rational, std::string>>& b) {
  size_t n = a.size();
  if (b.size() != n) return false;
  for (size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (size_t k = 0; k < n && ok; ++k) ok = a[(k + s) % n] == b[k];
    if (ok) return true;
  }
  return false;
}

}  // namespace

CoverAnalysis analyze_cover(const Tiling& t) {
  const Polygon& P = t.base;
  const Polygon& Q = t.outline;
  CoverAnalysis a;
  a.n_copies = static_cast<long>(t.size());
  a.N_P = P.N();
  a.N_Q = Q.N();
  if (a.N_P % a.N_Q) throw DomainError("N_Q does not divide N_P");
  std::vector<Dihedral> gens;
  for (const auto& e : Q.edges()) {
    Rational j = (e.direction.multiple - P.theta0()) * Rational(a.N_P);
    if (!j.is_integer()) throw DomainError("outline side outside the reflection group of the base");
    gens.push_back(Dihedral::reflection_at(a.N_P, j.mod(a.N_P).num_long()));
  }
  a.G_Q = generated(a.N_P, gens);
  a.N_Q_sides = static_cast<long>(a.G_Q.size()) / 2;
  if (a.N_Q_sides != a.N_Q) throw DomainError("reflection group of the outline disagrees with its angles");
  a.m = a.N_P / a.N_Q;
  a.degree = Rational(a.n_copies, a.m);
  if (!a.degree.is_integer()) throw DomainError("cover degree is not an integer");
  a.d = a.degree.num_long();

  TranslationSurface MP = unfold(P);
  TranslationSurface MQ = unfold(Q);
  a.top_P = genus(MP);
  a.top_Q = genus(MQ);

  std::vector<Dihedral> labels;
  for (const auto& m : t.motions) labels.push_back(m.label(P));

  for (size_t i = 0; i < t.points.size(); ++i) {
    const TilingPoint& tp = t.points[i];
    CoverPoint cp;
    cp.point = i;
    cp.base_vertex = tp.base_vertex;
    cp.base_angle = P.angles()[tp.base_vertex];
    cp.k = static_cast<long>(tp.corners.size());
    cp.kind = tp.interior ? "interior" : (tp.outline_vertex >= 0 ? "vertex" : "edge");
    cp.image = MP.point_class(labels[tp.corners[0].first], tp.base_vertex);
    for (const auto& [c, j] : tp.corners)
      if (MP.point_class(labels[c], static_cast<long>(j)) != cp.image)
        throw DomainError("copies meeting at a point project to different points");
    long down = MP.cone_points()[cp.image].k;
    if (tp.interior) {
      cp.cone_up = 1;
      cp.preimages = 2 * a.N_Q;
    } else {
      cp.cone_up = tp.total.num_long();
      cp.preimages = a.N_Q / tp.total.den_long();
    }
    if (cp.cone_up % down) throw DomainError("cone angle upstairs is not a multiple of the angle below");
    cp.e = cp.cone_up / down;
    long n0 = cp.base_angle.denominator();
    cp.e_formula = tp.interior ? 1 : cp.k / std::gcd(cp.k, n0);
    if (cp.e != cp.e_formula) throw DomainError("ramification index disagrees with the multiplier formula");
    a.ramification += cp.preimages * (cp.e - 1);
    a.points.push_back(cp);
  }

  std::set<long> locus;
  for (const auto& cp : a.points)
    if (cp.branched())
      for (const auto& h : a.G_Q) locus.insert(MP.act(h, cp.image));
  a.branch_locus.assign(locus.begin(), locus.end());

  a.rh_consistent = a.top_Q.chi == riemann_hurwitz_chi(a.d, a.top_P.chi, a.ramification);
  if (!a.rh_consistent) throw DomainError("Riemann-Hurwitz formula violated");

  std::map<long, long> count;
  for (const auto& h : a.G_Q)
    for (const auto& g : labels) ++count[(h * g).ordinal()];
  a.degree_consistent = static_cast<long>(count.size()) == 2 * a.N_P;
  for (const auto& [o, c] : count) a.degree_consistent = a.degree_consistent && c == a.d;

  std::map<long, Rational> fiber;
  for (const auto& cp : a.points)
    for (const auto& h : a.G_Q)
      fiber[MP.act(h, cp.image)] += Rational(cp.e * cp.preimages, 2 * a.N_Q);
  a.class_degree_consistent = fiber.size() == MP.cone_points().size();
  for (const auto& [z, s] : fiber) a.class_degree_consistent = a.class_degree_consistent && s == a.degree;

  auto q_edges = image_edges(Q, Dihedral::identity(a.N_P), P.theta0());
  std::set<long> h_set;
  for (const auto& s : Dihedral::all(a.N_P)) {
    if (!cyclic_equal(image_edges(Q, s, P.theta0()), q_edges)) continue;
    for (const auto& g : a.G_Q) h_set.insert((g * s).ordinal());
  }
  for (const auto& g : Dihedral::all(a.N_P))
    if (h_set.count(g.ordinal())) a.H.push_back(g);
  a.locus_invariant = true;
  for (const auto& h : a.H)
    for (long z : a.branch_locus) a.locus_invariant = a.locus_invariant && locus.count(MP.act(h, z));
  return a;
}

std::string to_string(Appropriate a) {
  switch (a) {
    case Appropriate::yes: return "appropriate";
    case Appropriate::no: return "not_appropriate";
    default: return "unknown";
  }
}

AppropriateVerdict appropriate_verdict(const Tiling& t, const CoverAnalysis& a,
                                       const std::vector<PeriodicityVerdict>& verdicts, const BaseInfo& base) {
  AppropriateVerdict v;
  if (base.square_tiled) v.reasons.push_back("square_tiled_base");
  if (!base.lattice) v.reasons.push_back("base_not_lattice");
  std::vector<bool> external(t.outline.size(), true);
  MinusIdScreen screen = minus_id_screen(t.outline, external);
  for (const auto& trig : screen.triggers)
    if (trig == "even_angle") v.reasons.push_back("even_angle_in_outline");
    else if (trig == "external_even_angle_pair") v.reasons.push_back("external_even_angle_pair");
  for (const auto& cp : a.points) {
    if (cp.kind != "vertex") continue;
    const Rational& beta = t.points[cp.point].total;
    if (beta.den_long() % 2 == 0 &&
        Rational(odd_multiplier(cp.base_angle)) * cp.base_angle.multiple > Rational(2)) {
      v.reasons.push_back("odd_multiplier_exceeds_full_turn");
      break;
    }
  }
  bool unknown = false;
  if (a.branch_locus.empty()) {
    v.reasons.push_back("unbranched");
  } else if (a.branch_locus.size() > 1) {
    v.reasons.push_back("branched_over_" + std::to_string(a.branch_locus.size()) + "_points");
  } else {
    long z = a.branch_locus[0];
    const PeriodicityVerdict& pv = verdicts.at(z);
    if (pv.status == PointStatus::periodic)
      v.reasons.push_back("branch_point_periodic");
    else if (pv.status == PointStatus::unknown)
      unknown = true;
    TranslationSurface MP = unfold(t.base);
    for (const auto* group : {&a.G_Q, &a.H})
      for (const auto& h : *group)
        if (MP.act(h, z) != z) {
          v.reasons.push_back("branch_point_not_fixed_by_G_Q_H");
          goto fixed_done;
        }
  fixed_done:;
  }
  if (!v.reasons.empty())
    v.appropriate = Appropriate::no;
  else if (unknown)
    v.appropriate = Appropriate::unknown;
  else
    v.appropriate = Appropriate::yes;
  if (unknown) v.reasons.push_back("branch_point_periodicity_unknown");
  return v;
}

}  // namespace flat
