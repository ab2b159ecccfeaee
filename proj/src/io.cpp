#include "flat/io.hpp"

#include <fstream>
#include <sstream>

#include "flat/expression.hpp"

namespace flat {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw DomainError("expected a rational number");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw DomainError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string svg_number(const Real& x) { return x.decimal(15); }

}  // namespace

Json to_json(const Real& x) { return Json{{"exact", to_expression(x)}, {"decimal", x.decimal(50)}}; }

Real real_from_json(const Json& j) {
  if (j.is_number_integer()) return Real(j.get<long>());
  if (j.is_string()) return parse_constant(j.get<std::string>());
  if (j.is_object()) return real_from_json(field(j, "exact"));
  throw DomainError("expected an exact real number");
}

Json to_json(const Point& z) {
  return Json{{"re", to_json(Real::real_part_of(z))}, {"im", to_json(Real::imag_part_of(z))}};
}

Point point_from_json(const Json& j) {
  return real_from_json(field(j, "re")).value() + Cyclotomic::imaginary_unit() * real_from_json(field(j, "im")).value();
}

Json to_json(const Polygon& P) {
  Json edges = Json::array(), angles = Json::array();
  for (const auto& e : P.edges()) edges.push_back({{"direction", e.direction.str()}, {"length", to_json(e.length)}});
  for (const auto& a : P.angles()) angles.push_back(a.str());
  return Json{{"type", "polygon"}, {"edges", edges}, {"angles", angles}, {"N", P.N()}, {"area", to_json(P.area())}};
}

Polygon polygon_from_json(const Json& j) {
  if (j.is_object() && j.contains("triangle")) {
    const Json& t = j.at("triangle");
    if (!t.is_array() || t.size() != 3) throw DomainError("\"triangle\" needs three angles");
    size_t unit = j.contains("unit") ? j.at("unit").get<size_t>() : 0;
    return triangle_from_angles(RationalAngle(rational_from_json(t[0])), RationalAngle(rational_from_json(t[1])),
                                RationalAngle(rational_from_json(t[2])), unit);
  }
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges"))
    edges.push_back({RationalAngle(rational_from_json(field(e, "direction"))), real_from_json(field(e, "length"))});
  return Polygon(std::move(edges));
}

Json to_json(const TranslationSurface& M) {
  Json faces = Json::array(), pairing = Json::array(), cones = Json::array();
  for (const auto& f : M.faces()) {
    Json face{{"polygon", to_json(f.polygon)}, {"translation", to_json(f.translation)}};
    if (f.label) face["label"] = f.label->label();
    face["source_vertex"] = f.source_vertex;
    face["source_side"] = f.source_side;
    faces.push_back(face);
  }
  for (const auto& row : M.pairing()) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(Json::array({e.face, e.edge}));
    pairing.push_back(r);
  }
  for (const auto& c : M.cone_points())
    cones.push_back({{"k", c.k}, {"total_angle", c.total_angle.str()}, {"source_vertex", c.source_vertex}});
  Json out{{"type", "surface"}};
  if (M.base()) out["base"] = to_json(*M.base());
  out["faces"] = faces;
  out["pairing"] = pairing;
  out["cone_points"] = cones;
  out["topology"] = to_json(genus(M));
  return out;
}

TranslationSurface surface_from_json(const Json& j) {
  std::optional<Polygon> base;
  if (j.contains("base")) base = polygon_from_json(j.at("base"));
  std::vector<Face> faces;
  for (const auto& f : field(j, "faces")) {
    Face face{polygon_from_json(field(f, "polygon")), std::nullopt, Point(), {}, {}};
    if (f.contains("translation")) face.translation = point_from_json(f.at("translation"));
    if (f.contains("label")) {
      if (!base) throw DomainError("face labels need a base polygon");
      face.label = Dihedral::parse(base->N(), f.at("label").get<std::string>());
    }
    if (f.contains("source_vertex")) face.source_vertex = f.at("source_vertex").get<std::vector<long>>();
    if (f.contains("source_side")) face.source_side = f.at("source_side").get<std::vector<long>>();
    faces.push_back(std::move(face));
  }
  std::vector<std::vector<EdgeRef>> pairing;
  for (const auto& row : field(j, "pairing")) {
    std::vector<EdgeRef> r;
    for (const auto& e : row) {
      if (!e.is_array() || e.size() != 2) throw DomainError("pairing entries are [face, edge]");
      r.push_back({e[0].get<size_t>(), e[1].get<size_t>()});
    }
    pairing.push_back(std::move(r));
  }
  return TranslationSurface(std::move(faces), std::move(pairing), std::move(base));
}

Json to_json(const Tiling& t) {
  Json steps = Json::array(), motions = Json::array();
  for (const auto& s : t.steps) steps.push_back(Json::array({s.parent, s.side}));
  for (const auto& m : t.motions)
    motions.push_back({{"reflect", m.reflect}, {"angle", m.angle.str()}, {"tau", to_json(m.tau)}});
  return Json{{"type", "tiling"}, {"base", to_json(t.base)}, {"copies", t.size()}, {"steps", steps},
              {"motions", motions}, {"outline", to_json(t.outline)}};
}

Tiling tiling_from_json(const Json& j) {
  Polygon base = polygon_from_json(field(j, "base"));
  if (j.contains("motions") && !j.at("motions").empty()) {
    std::vector<Motion> motions;
    for (const auto& m : j.at("motions"))
      motions.push_back({field(m, "reflect").get<bool>(), rational_from_json(field(m, "angle")),
                         point_from_json(field(m, "tau"))});
    Tiling t = verify_motions(base, motions);
    if (j.contains("steps"))
      for (const auto& s : j.at("steps")) t.steps.push_back({s.at(0).get<size_t>(), s.at(1).get<size_t>()});
    return t;
  }
  std::vector<TilingStep> steps;
  if (j.contains("steps"))
    for (const auto& s : j.at("steps")) {
      if (!s.is_array() || s.size() != 2) throw DomainError("steps are [parent, side]");
      steps.push_back({s[0].get<size_t>(), s[1].get<size_t>()});
    }
  return verify_tiling(base, steps);
}

Json to_json(const Topology& t) {
  return Json{{"V", t.V}, {"E", t.E}, {"F", t.F}, {"chi", t.chi}, {"genus", t.genus}, {"sum_k_minus_1", t.sum_k_minus_1}};
}

Json to_json(const CoverAnalysis& a) {
  Json pts = Json::array(), locus = a.branch_locus, GQ = Json::array(), H = Json::array();
  for (const auto& p : a.points)
    pts.push_back({{"point", p.point},     {"base_vertex", p.base_vertex}, {"base_angle", p.base_angle.str()},
                   {"k", p.k},             {"kind", p.kind},               {"cone_up", p.cone_up},
                   {"e", p.e},             {"e_formula", p.e_formula},     {"preimages", p.preimages},
                   {"image", p.image}});
  for (const auto& g : a.G_Q) GQ.push_back(g.label());
  for (const auto& g : a.H) H.push_back(g.label());
  return Json{{"copies", a.n_copies},
              {"N_P", a.N_P},
              {"N_Q", a.N_Q},
              {"m", a.m},
              {"degree", a.degree.str()},
              {"d", a.d},
              {"top_P", to_json(a.top_P)},
              {"top_Q", to_json(a.top_Q)},
              {"ramification", a.ramification},
              {"branch_locus", locus},
              {"G_Q", GQ},
              {"H", H},
              {"points", pts},
              {"checks",
               {{"riemann_hurwitz", a.rh_consistent},
                {"degree", a.degree_consistent},
                {"class_degree", a.class_degree_consistent},
                {"locus_invariant", a.locus_invariant}}}};
}

Json to_json(const AppropriateVerdict& v) {
  return Json{{"appropriate", to_string(v.appropriate)}, {"reasons", v.reasons}};
}

Json to_json(const PeriodicityVerdict& v) {
  Json out{{"cone", v.cone}, {"status", to_string(v.status)}, {"certificate", to_string(v.certificate)}};
  if (v.split) {
    Real r = v.split->h1 / v.split->h;
    out["split"] = {{"direction", v.split->direction.str()},
                    {"cylinder", v.split->cylinder},
                    {"h1", to_json(v.split->h1)},
                    {"h", to_json(v.split->h)},
                    {"ratio", to_json(r)},
                    {"ratio_squared", to_json(r * r)}};
  }
  Json attempts = Json::array();
  for (const auto& a : v.attempts) attempts.push_back({{"direction", a.direction.str()}, {"outcome", a.outcome}});
  out["attempts"] = attempts;
  return out;
}

Json to_json(const Decomposition& D) {
  Json cyl = Json::array();
  for (const auto& c : D.cylinders)
    cyl.push_back({{"circumference", to_json(c.circumference)},
                   {"height", to_json(c.height)},
                   {"area", to_json(c.area())},
                   {"modulus", to_json(c.height / c.circumference)},
                   {"subcylinders", c.subcylinders.size()},
                   {"closed_torus", c.closed_torus}});
  Real sum;
  for (const auto& c : D.cylinders) sum += c.area();
  return Json{{"direction", D.direction.str()},
              {"cylinders", cyl},
              {"saddle_connections", D.saddle_connections.size()},
              {"total_area", to_json(D.total_area)},
              {"area_conserved", sum == D.total_area}};
}

Json to_json(const CatalogEntry& c) {
  Json facts{{"lattice", c.facts.lattice},
             {"square_tiled", c.facts.square_tiled},
             {"singular_vertices", c.facts.singular_vertices},
             {"non_periodic_vertices", c.facts.non_periodic_vertices},
             {"periodic_vertices", c.facts.periodic_vertices},
             {"surface", c.facts.surface}};
  if (c.facts.genus) facts["genus"] = *c.facts.genus;
  Json out{{"family", c.family}};
  if (c.n) out["n"] = *c.n;
  out["polygon"] = to_json(c.polygon);
  out["vertex_names"] = c.vertex_names;
  out["facts"] = facts;
  return out;
}

Json to_json(const SearchReport& r) {
  Json rejected = Json::array();
  for (const auto& x : r.rejected) {
    Json motions = Json::array();
    for (const auto& m : x.node.motions)
      motions.push_back({{"reflect", m.reflect}, {"angle", m.angle.str()}, {"tau", to_json(m.tau)}});
    Json committed = Json::array();
    for (const auto& [c, k] : x.node.committed) committed.push_back(Json::array({c, k}));
    rejected.push_back({{"tag", x.tag},
                        {"reasons", x.reasons},
                        {"copies", x.node.motions.size()},
                        {"outline_angles", to_json(x.outline)["angles"]},
                        {"motions", motions},
                        {"committed", committed}});
  }
  Json out{{"family", r.family}};
  if (r.n) out["n"] = *r.n;
  out["max_copies"] = r.options.max_copies;
  out["class"] = r.options.cls;
  if (r.options.cls == 2) out["intermediate_copies"] = r.options.intermediate_copies;
  out["outcome"] = r.outcome;
  if (r.candidate) out["candidate"] = to_json(*r.candidate);
  out["statistics"] = {{"nodes", r.nodes},
                       {"duplicates", r.duplicates},
                       {"terminals", r.terminals},
                       {"intermediates", r.intermediates},
                       {"prunes", r.prunes},
                       {"forced", r.forced}};
  out["rejected"] = rejected;
  out["notes"] = r.notes;
  return out;
}

namespace {

std::string polygon_path(const std::vector<Point>& pts, const Point& shift) {
  std::ostringstream os;
  for (size_t k = 0; k < pts.size(); ++k) {
    Point z = pts[k] + shift;
    os << (k ? " L " : "M ") << svg_number(Real::real_part_of(z)) << " " << svg_number(-Real::imag_part_of(z));
  }
  os << " Z";
  return os.str();
}

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(const Point& z) {
    auto c = z.approx();
    x0 = std::min(x0, c.real());
    x1 = std::max(x1, c.real());
    y0 = std::min(y0, -c.imag());
    y1 = std::max(y1, -c.imag());
  }
};

std::string svg_document(const Box& b, const std::string& body) {
  double pad = 0.05 * std::max(b.x1 - b.x0, b.y1 - b.y0) + 1e-9;
  std::ostringstream os;
  os.precision(15);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << b.x0 - pad << " " << b.y0 - pad << " "
     << b.x1 - b.x0 + 2 * pad << " " << b.y1 - b.y0 + 2 * pad << "\">\n"
     << body << "</svg>\n";
  return os.str();
}

}  // namespace

std::string surface_svg(const TranslationSurface& M) {
  Box box;
  std::ostringstream body;
  for (size_t f = 0; f < M.faces().size(); ++f) {
    const Face& face = M.faces()[f];
    for (const auto& v : face.polygon.vertices()) box.add(v + face.translation);
    body << "<path d=\"" << polygon_path(face.polygon.vertices(), face.translation)
         << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.2%\" vector-effect=\"non-scaling-stroke\"";
    if (face.label) body << " data-label=\"" << face.label->label() << "\"";
    body << "/>\n";
  }
  return svg_document(box, body.str());
}

std::string tiling_svg(const Tiling& t) {
  Box box;
  std::ostringstream body;
  for (const auto& copy : t.copies) {
    for (const auto& v : copy) box.add(v);
    body << "<path d=\"" << polygon_path(copy, Point()) << "\" fill=\"#dde\" stroke=\"gray\""
         << " vector-effect=\"non-scaling-stroke\"/>\n";
  }
  std::vector<Point> outline;
  for (const auto& v : t.outline.vertices()) outline.push_back(v + t.outline_origin);
  body << "<path d=\"" << polygon_path(outline, Point()) << "\" fill=\"none\" stroke=\"black\""
       << " stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"/>\n";
  return svg_document(box, body.str());
}

std::string decomposition_svg(const TranslationSurface& M, const Decomposition& D) {
  Box box;
  std::ostringstream body;
  for (const auto& face : M.faces()) {
    for (const auto& v : face.polygon.vertices()) box.add(v + face.translation);
    body << "<path d=\"" << polygon_path(face.polygon.vertices(), face.translation)
         << "\" fill=\"#eef\" stroke=\"gray\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  Point back = D.rotation.conj();
  Point i = Cyclotomic::imaginary_unit();
  for (const auto& sc : D.saddle_connections)
    for (const auto& seg : sc.segments) {
      const Point& shift = M.faces()[seg.face].translation;
      Point a = back * (seg.x0.value() + i * seg.y.value()) + shift;
      Point b = back * (seg.x1.value() + i * seg.y.value()) + shift;
      body << "<line x1=\"" << svg_number(Real::real_part_of(a)) << "\" y1=\"" << svg_number(-Real::imag_part_of(a))
           << "\" x2=\"" << svg_number(Real::real_part_of(b)) << "\" y2=\"" << svg_number(-Real::imag_part_of(b))
           << "\" stroke=\"red\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
  return svg_document(box, body.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw DomainError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DomainError("cannot replace " + path.string() + ": " + ec.message());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace flat
