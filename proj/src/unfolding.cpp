#include "flat/unfolding.hpp"

#include <numeric>

namespace flat {

namespace {

struct UnionFind {
  std::vector<size_t> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  size_t find(size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

}  // namespace

TranslationSurface::TranslationSurface(std::vector<Face> faces, std::vector<std::vector<EdgeRef>> pairing,
                                       std::optional<Polygon> base)
    : faces_(std::move(faces)), pairing_(std::move(pairing)), base_(std::move(base)) {
  if (pairing_.size() != faces_.size()) throw DomainError("pairing table size mismatch");
  std::vector<size_t> offset;
  size_t total = 0;
  for (size_t f = 0; f < faces_.size(); ++f) {
    offset.push_back(total);
    if (pairing_[f].size() != faces_[f].polygon.size()) throw DomainError("pairing table size mismatch");
    total += faces_[f].polygon.size();
  }
  for (size_t f = 0; f < faces_.size(); ++f) {
    for (size_t k = 0; k < pairing_[f].size(); ++k) {
      EdgeRef e{f, k};
      const EdgeRef& o = pairing_[f][k];
      if (o.face >= faces_.size() || o.edge >= faces_[o.face].polygon.size())
        throw DomainError("pairing refers to a missing edge");
      if (o == e) throw DomainError("edge paired with itself");
      if (!(pairing_[o.face][o.edge] == e)) throw DomainError("pairing is not an involution");
      const Edge& a = faces_[f].polygon.edges()[k];
      const Edge& b = faces_[o.face].polygon.edges()[o.edge];
      if ((a.direction.multiple - b.direction.multiple).mod(2) != Rational(1) || !(a.length == b.length))
        throw DomainError("paired edges are not opposite translates");
    }
  }
  UnionFind uf(total);
  for (size_t f = 0; f < faces_.size(); ++f) {
    size_t n = faces_[f].polygon.size();
    for (size_t k = 0; k < n; ++k) {
      const EdgeRef& o = pairing_[f][k];
      size_t m = faces_[o.face].polygon.size();
      uf.unite(offset[f] + k, offset[o.face] + (o.edge + 1) % m);
      uf.unite(offset[f] + (k + 1) % n, offset[o.face] + o.edge);
    }
  }
  std::vector<long> root_to_cone(total, -1);
  corner_class_.resize(faces_.size());
  for (size_t f = 0; f < faces_.size(); ++f) {
    const Polygon& poly = faces_[f].polygon;
    for (size_t k = 0; k < poly.size(); ++k) {
      size_t r = uf.find(offset[f] + k);
      if (root_to_cone[r] < 0) {
        root_to_cone[r] = static_cast<long>(cones_.size());
        cones_.emplace_back();
      }
      ConePoint& c = cones_[root_to_cone[r]];
      c.corners.push_back({f, k});
      c.total_angle += poly.angles()[k].multiple;
      long sv = faces_[f].source_vertex.empty() ? -1 : faces_[f].source_vertex[k];
      if (c.corners.size() == 1)
        c.source_vertex = sv;
      else if (c.source_vertex != sv)
        c.source_vertex = -1;
      corner_class_[f].push_back(root_to_cone[r]);
    }
  }
  for (auto& c : cones_) {
    Rational half = c.total_angle / Rational(2);
    if (!half.is_integer() || half.sign() <= 0) throw DomainError("cone angle is not a multiple of 2*pi");
    c.k = half.num_long();
  }
}

Point TranslationSurface::shift(const EdgeRef& e) const {
  const EdgeRef& o = partner(e);
  const Polygon& pf = faces_[e.face].polygon;
  const Polygon& po = faces_[o.face].polygon;
  return po.vertices()[o.edge] - pf.vertices()[(e.edge + 1) % pf.size()];
}

Real TranslationSurface::area() const {
  Real a;
  for (const auto& f : faces_) a += f.polygon.area();
  return a;
}

long TranslationSurface::point_class(const Dihedral& g, long j) const {
  if (!base_) throw DomainError("surface has no base polygon");
  size_t f = face_of(g);
  const auto& sv = faces_[f].source_vertex;
  for (size_t k = 0; k < sv.size(); ++k)
    if (sv[k] == j) return corner_class_[f][k];
  throw DomainError("vertex index out of range");
}

long TranslationSurface::act(const Dihedral& h, long cone) const {
  const EdgeRef& c = cones_[cone].corners.front();
  const Face& f = faces_[c.face];
  return point_class(h * *f.label, f.source_vertex[c.edge]);
}

TranslationSurface unfold(const Polygon& P) {
  long N = P.N();
  auto group = Dihedral::all(N);
  size_t n = P.size();
  // display placement: copies arranged around the vertex with the smallest angle
  size_t hub = 0;
  for (size_t j = 1; j < n; ++j)
    if (P.angles()[j].multiple < P.angles()[hub].multiple) hub = j;
  std::vector<Face> faces;
  for (const auto& g : group) {
    Face f{P.transformed(g), g, -g.apply(P.vertices()[hub], P.theta0()), {}, {}};
    for (size_t k = 0; k < n; ++k) {
      f.source_vertex.push_back(static_cast<long>(P.source_vertex(g, k)));
      f.source_side.push_back(static_cast<long>(P.source_side(g, k)));
    }
    faces.push_back(std::move(f));
  }
  std::vector<Dihedral> refl;
  for (size_t i = 0; i < n; ++i) refl.push_back(P.side_reflection(i));
  std::vector<std::vector<EdgeRef>> pairing(faces.size());
  for (size_t f = 0; f < faces.size(); ++f) {
    const Dihedral& g = group[f];
    for (size_t k = 0; k < n; ++k) {
      size_t side = P.source_side(g, k);
      Dihedral h = g * refl[side];
      size_t fh = static_cast<size_t>(h.ordinal());
      size_t kh = 0;
      while (P.source_side(h, kh) != side) ++kh;
      pairing[f].push_back({fh, kh});
    }
  }
  return TranslationSurface(std::move(faces), std::move(pairing), P);
}

std::vector<ConePoint> cone_points(const TranslationSurface& M) { return M.cone_points(); }

Topology genus(const TranslationSurface& M) {
  long V = static_cast<long>(M.cone_points().size());
  long E2 = 0;
  for (const auto& f : M.faces()) E2 += static_cast<long>(f.polygon.size());
  long F = static_cast<long>(M.faces().size());
  long chi = V - E2 / 2 + F;
  long s = 0;
  for (const auto& c : M.cone_points()) s += c.k - 1;
  if (s != -chi) throw DomainError("genus formulas disagree");
  if ((2 - chi) % 2) throw DomainError("odd Euler characteristic");
  return {V, E2 / 2, F, chi, (2 - chi) / 2, s};
}

}  // namespace flat
