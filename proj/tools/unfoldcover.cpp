#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flat/flow.hpp"
#include "flat/io.hpp"
#include "flat/periodicity.hpp"
#include "flat/search.hpp"
#include "flat/unfolding.hpp"

using namespace flat;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Where a polygon or surface comes from; exactly one source must be given.
struct Source {
  std::string triangle, in, family;
  std::optional<long> n;
  std::optional<size_t> unit;

  void add_to(CLI::App* app) {
    app->add_option("--triangle", triangle, "three angles as multiples of pi, e.g. 1/2,1/8,3/8");
    app->add_option("--in", in, "polygon or surface JSON file");
    app->add_option("--family", family, "catalog family");
    app->add_option("--n", n, "family parameter");
    app->add_option("--unit", unit, "side normalized to length 1 (triangles)");
  }

  int count() const { return !triangle.empty() + !in.empty() + !family.empty(); }

  std::variant<Polygon, TranslationSurface> load() const {
    if (count() != 1) throw UsageError("give exactly one of --triangle, --in, --family");
    if (!triangle.empty()) {
      std::vector<RationalAngle> a;
      std::stringstream ss(triangle);
      std::string part;
      while (std::getline(ss, part, ',')) a.emplace_back(Rational::parse(part));
      if (a.size() != 3) throw UsageError("--triangle needs three angles");
      return triangle_from_angles(a[0], a[1], a[2], unit.value_or(0));
    }
    if (!family.empty()) return make_entry(family, n).polygon;
    Json j = read_json_file(in);
    if (j.contains("faces")) return surface_from_json(j);
    return polygon_from_json(j);
  }

  TranslationSurface surface() const {
    auto v = load();
    if (auto* P = std::get_if<Polygon>(&v)) return unfold(*P);
    return std::get<TranslationSurface>(v);
  }
};

RationalAngle parse_direction(const std::string& s) {
  try {
    return RationalAngle(Rational::parse(s));
  } catch (const DomainError&) {
    throw UsageError("direction must be a rational multiple of pi: " + s);
  }
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_file_atomic(out, j.dump(2) + "\n");
}

Json cones_json(const TranslationSurface& M) {
  Json cones = Json::array();
  for (size_t c = 0; c < M.cone_points().size(); ++c) {
    const ConePoint& p = M.cone_points()[c];
    cones.push_back({{"class", c}, {"k", p.k}, {"total_angle", p.total_angle.str()},
                     {"corners", p.corners.size()}, {"source_vertex", p.source_vertex}});
  }
  return cones;
}

// Vertex given by name, index or interior angle.
size_t resolve_vertex(const CatalogEntry& e, const std::string& point) {
  const auto& names = e.vertex_names;
  for (size_t k = 0; k < names.size(); ++k)
    if (names[k] == point) return k;
  size_t N = e.polygon.angles().size();
  if (!point.empty() && point.find_first_not_of("0123456789") == std::string::npos) {
    size_t k = std::stoul(point);
    if (k < N) return k;
  }
  try {
    Rational a = Rational::parse(point);
    for (size_t k = 0; k < N; ++k)
      if (e.polygon.angles()[k].multiple == a) return k;
  } catch (const DomainError&) {
  }
  throw UsageError("no vertex named " + point);
}

Json run_nonperiodic(const CatalogEntry& e, size_t vertex, const std::optional<std::string>& direction,
                     std::optional<double> bound) {
  TranslationSurface M = unfold(e.polygon);
  Json points = Json::array();
  std::vector<RationalAngle> dirs =
      direction ? std::vector<RationalAngle>{parse_direction(*direction)} : default_directions(M);
  std::optional<Decomposition> D;
  std::string outcome;
  if (direction) {
    auto r = cylinder_decomposition(M, dirs[0], bound);
    if (auto* d = std::get_if<Decomposition>(&r))
      D = *d;
    else
      outcome = std::get<NotShownPeriodic>(r).reason;
  }
  for (size_t c = 0; c < M.cone_points().size(); ++c) {
    if (M.cone_points()[c].source_vertex != static_cast<long>(vertex)) continue;
    PeriodicityVerdict v = classify_point(M, static_cast<long>(c), dirs, bound);
    Json j = to_json(v);
    if (D && M.cone_points()[c].k == 1) {
      try {
        HeightSplit s = height_split(M, *D, vertex_point(M, static_cast<long>(c)));
        Real r = s.h1 / s.h;
        j["split_in_direction"] = {{"h1", to_json(s.h1)}, {"h", to_json(s.h)}, {"ratio", to_json(r)},
                                   {"ratio_squared", to_json(r * r)}, {"rational", s.rational}};
      } catch (const DomainError& err) {
        j["split_in_direction"] = {{"boundary", err.what()}};
      }
    }
    points.push_back(j);
  }
  Json out{{"family", e.family}};
  if (e.n) out["n"] = *e.n;
  out["vertex"] = vertex;
  if (vertex < e.vertex_names.size()) out["name"] = e.vertex_names[vertex];
  out["angle"] = e.polygon.angles()[vertex].str();
  if (direction) out["direction"] = *direction;
  if (!outcome.empty()) out["decomposition"] = outcome;
  std::string status = "periodic";
  for (const auto& p : points) {
    if (p["status"] == "non_periodic") status = "non_periodic";
    else if (p["status"] == "unknown" && status == "periodic") status = "unknown";
  }
  out["status"] = status;
  out["points"] = points;
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Translation surfaces, covers and periodic points of rational billiards"};
  app.require_subcommand(1);
  std::string out;

  Source unfold_src;
  std::string svg;
  auto* c_unfold = app.add_subcommand("unfold", "unfold a polygon into its translation surface");
  unfold_src.add_to(c_unfold);
  c_unfold->add_option("--svg", svg, "write the faces as SVG");
  c_unfold->add_option("--out", out, "JSON output file");

  Source analyze_src;
  auto* c_analyze = app.add_subcommand("analyze", "genus, Euler characteristic and cone points");
  analyze_src.add_to(c_analyze);
  c_analyze->add_option("--out", out, "JSON output file");

  Source cyl_src;
  std::string direction = "0";
  std::optional<double> bound;
  auto* c_cyl = app.add_subcommand("cylinders", "cylinder decomposition in a rational direction");
  cyl_src.add_to(c_cyl);
  c_cyl->add_option("--direction", direction, "multiple of pi");
  c_cyl->add_option("--length-bound", bound, "leaf length traced before giving up");
  c_cyl->add_option("--svg", svg, "write faces and saddle connections as SVG");
  c_cyl->add_option("--out", out, "JSON output file");

  std::string np_family, np_point;
  std::optional<long> np_n;
  std::optional<std::string> np_direction;
  auto* c_np = app.add_subcommand("nonperiodic-test", "classify the points over a vertex of a catalog polygon");
  c_np->add_option("--family", np_family, "catalog family")->required();
  c_np->add_option("--n", np_n, "family parameter");
  c_np->add_option("--point", np_point, "vertex name, index or angle")->required();
  c_np->add_option("--direction", np_direction, "multiple of pi; default tries the standard directions");
  c_np->add_option("--length-bound", bound, "leaf length traced before giving up");
  c_np->add_option("--out", out, "JSON output file");

  std::string tiling_in;
  bool lattice = true, square_tiled = false;
  auto* c_check = app.add_subcommand("check-cover", "analyze a tiling as a branched cover");
  c_check->add_option("--in", tiling_in, "tiling JSON file")->required();
  c_check->add_option("--lattice", lattice, "base is a lattice polygon");
  c_check->add_option("--square-tiled", square_tiled, "base unfolds to a square-tiled surface");
  c_check->add_option("--out", out, "JSON output file");

  std::string cat_family, cat_dir;
  std::optional<long> cat_n;
  auto* c_cat = app.add_subcommand("catalog", "list families or emit one catalog polygon");
  c_cat->add_option("--family", cat_family, "family to emit");
  c_cat->add_option("--n", cat_n, "family parameter");
  c_cat->add_option("--out", out, "JSON output file");

  std::string s_family, svg_dir;
  SearchOptions opts;
  std::optional<long> s_n;
  auto* c_search = app.add_subcommand("search-appropriate", "bounded search for an appropriate cover");
  c_search->add_option("--family", s_family, "catalog family")->required();
  c_search->add_option("--n", s_n, "family parameter");
  c_search->add_option("--max-copies", opts.max_copies, "copies of the base")->check(CLI::PositiveNumber);
  c_search->add_option("--class", opts.cls, "1 or 2")->check(CLI::IsMember({1, 2}));
  c_search->add_option("--intermediate-copies", opts.intermediate_copies, "copies in an intermediate polygon")
      ->check(CLI::PositiveNumber);
  c_search->add_option("--node-budget", opts.node_budget, "nodes before giving up")->check(CLI::PositiveNumber);
  c_search->add_option("--svg-dir", svg_dir, "write each rejected terminal tiling as SVG");
  c_search->add_option("--out", out, "JSON output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (c_unfold->parsed()) {
      TranslationSurface M = unfold_src.surface();
      if (!svg.empty()) write_file_atomic(svg, surface_svg(M));
      emit(to_json(M), out);
    } else if (c_analyze->parsed()) {
      TranslationSurface M = analyze_src.surface();
      Topology t = genus(M);
      Json j = to_json(t);
      j["faces"] = M.faces().size();
      j["cone_points"] = cones_json(M);
      emit(j, out);
    } else if (c_cyl->parsed()) {
      RationalAngle theta = parse_direction(direction);
      TranslationSurface M = cyl_src.surface();
      auto r = cylinder_decomposition(M, theta, bound);
      if (auto* nsp = std::get_if<NotShownPeriodic>(&r)) {
        emit(Json{{"direction", theta.str()}, {"not_shown_periodic", nsp->reason},
                  {"traced_length", nsp->traced_length}},
             out);
        return 0;
      }
      const Decomposition& D = std::get<Decomposition>(r);
      Json j = to_json(D);
      Json splits = Json::array();
      for (size_t c = 0; c < M.cone_points().size(); ++c) {
        if (M.cone_points()[c].k != 1) continue;
        try {
          HeightSplit s = height_split(M, D, vertex_point(M, static_cast<long>(c)));
          splits.push_back({{"class", c}, {"cylinder", s.cylinder}, {"h1", to_json(s.h1)},
                            {"h", to_json(s.h)}, {"ratio", to_json(s.h1 / s.h)}, {"rational", s.rational}});
        } catch (const DomainError&) {
          splits.push_back({{"class", c}, {"boundary", true}});
        }
      }
      j["splits"] = splits;
      if (!svg.empty()) write_file_atomic(svg, decomposition_svg(M, D));
      emit(j, out);
    } else if (c_np->parsed()) {
      CatalogEntry e = make_entry(np_family, np_n);
      if (np_direction) parse_direction(*np_direction);
      emit(run_nonperiodic(e, resolve_vertex(e, np_point), np_direction, bound), out);
    } else if (c_check->parsed()) {
      Tiling t = tiling_from_json(read_json_file(tiling_in));
      CoverAnalysis a = analyze_cover(t);
      TranslationSurface M = unfold(t.base);
      auto verdicts = classify_points(M, default_directions(M));
      AppropriateVerdict v = appropriate_verdict(t, a, verdicts, BaseInfo{lattice, square_tiled});
      emit(Json{{"tiling", to_json(t)}, {"analysis", to_json(a)}, {"verdict", to_json(v)}}, out);
    } else if (c_cat->parsed()) {
      if (cat_family.empty()) {
        Json list = Json::array();
        for (const auto& f : catalog_families())
          list.push_back({{"family", f.id}, {"description", f.description}, {"needs_n", f.needs_n},
                          {"n_min", f.n_min}, {"odd_only", f.odd_only}});
        emit(list, out);
      } else {
        emit(to_json(make_entry(cat_family, cat_n)), out);
      }
    } else if (c_search->parsed()) {
      SearchReport r = search_appropriate(make_entry(s_family, s_n), opts);
      if (!svg_dir.empty()) {
        std::filesystem::create_directories(svg_dir);
        for (size_t i = 0; i < r.rejected.size(); ++i) {
          Tiling t = verify_motions(make_entry(s_family, s_n).polygon, r.rejected[i].node.motions);
          write_file_atomic(std::filesystem::path(svg_dir) / ("rejected_" + std::to_string(i) + ".svg"),
                            tiling_svg(t));
        }
      }
      emit(to_json(r), out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << Json{{"error", "domain_error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << Json{{"error", "io_error"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
