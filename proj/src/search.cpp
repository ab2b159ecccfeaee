#include "flat/search.hpp"

#include <algorithm>
#include <functional>

namespace flat {

SearchContext make_search_context(const Polygon& P, std::vector<PeriodicityVerdict> verdicts, const BaseInfo& info) {
  TranslationSurface M = unfold(P);
  if (verdicts.size() != M.cone_points().size()) throw DomainError("one verdict per point class is needed");
  SearchContext ctx{P, M, std::move(verdicts), info, {}, {}, polygon_symmetries(P)};
  long N = P.N();
  for (size_t z = 0; z < ctx.verdicts.size(); ++z) {
    ctx.candidate.push_back(ctx.verdicts[z].status != PointStatus::periodic);
    long fixed = 0;
    for (long j = 0; j < N; ++j) fixed += M.act(Dihedral::rotation(N, j), static_cast<long>(z)) == static_cast<long>(z);
    ctx.stab_rotations.push_back(fixed);
  }
  return ctx;
}

SearchContext make_search_context(const Polygon& P, const BaseInfo& info) {
  TranslationSurface M = unfold(P);
  return make_search_context(P, classify_points(M, default_directions(M)), info);
}

std::vector<PolygonSymmetry> polygon_symmetries(const Polygon& P) {
  const auto& v = P.vertices();
  size_t n = v.size();
  long N = P.N();
  std::vector<PolygonSymmetry> out;
  for (bool reflect : {false, true})
    for (long i = 0; i < 2 * N; ++i) {
      Rational angle(i, N);
      Motion lin{reflect, angle, Point()};
      for (size_t j = 0; j < n; ++j) {
        Motion m{reflect, angle, v[j] - lin.apply(v[0])};
        std::vector<size_t> map(n);
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
          Point w = m.apply(v[k]);
          ok = false;
          for (size_t q = 0; q < n; ++q)
            if (v[q] == w) {
              map[k] = q;
              ok = true;
              break;
            }
        }
        if (!ok) continue;
        std::vector<size_t> sides(n);
        for (size_t k = 0; k < n; ++k) sides[k] = map[(k + 1) % n] == (map[k] + 1) % n ? map[k] : map[(k + 1) % n];
        out.push_back({m, map, sides});
      }
    }
  return out;
}

namespace {

struct CopyDecoration {
  std::vector<std::string> side, vertex;
};

// A copy seen through its least key among relabellings by symmetries of the base.
std::string copy_key(const Motion& m, const CopyDecoration& d, const std::vector<PolygonSymmetry>& sym) {
  std::string best;
  bool first = true;
  for (const auto& S : sym) {
    std::string key = motion_key(compose(m, S.motion)) + "#";
    for (size_t k = 0; k < d.side.size(); ++k) key += d.side[S.side_map[k]] + "," + d.vertex[S.vertex_map[k]] + ";";
    if (first || key < best) best = std::move(key);
    first = false;
  }
  return best;
}

// Minimum over anchor copies and base symmetries of the sorted copy keys seen from the anchor.
std::string canonical_with(const std::vector<Motion>& motions, const std::vector<CopyDecoration>& decoration,
                           const std::vector<PolygonSymmetry>& sym) {
  std::string best;
  bool first = true;
  for (size_t c = 0; c < motions.size(); ++c)
    for (const auto& S : sym) {
      Motion to_anchor = inverse(compose(motions[c], S.motion));
      std::vector<std::string> parts;
      for (size_t i = 0; i < motions.size(); ++i) parts.push_back(copy_key(compose(to_anchor, motions[i]), decoration[i], sym));
      std::sort(parts.begin(), parts.end());
      std::string key;
      for (const auto& p : parts) key += p + "|";
      if (first || key < best) best = std::move(key);
      first = false;
    }
  return best;
}

}  // namespace

std::string canonical_key(const SearchContext& ctx, const SearchNode& node) {
  size_t n = ctx.base.size();
  std::vector<CopyDecoration> deco(node.motions.size(), {std::vector<std::string>(n), std::vector<std::string>(n)});
  for (const auto& [c, k] : node.committed) deco[c].side[k] = "x";
  return canonical_with(node.motions, deco, ctx.symmetries);
}

std::vector<std::pair<size_t, size_t>> undecided_sides(const SearchNode& node, const Tiling& t) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t c = 0; c < t.sides.size(); ++c)
    for (size_t k = 0; k < t.sides[c].size(); ++k)
      if (t.sides[c][k].external() && !node.committed.count({c, k})) out.push_back({c, k});
  return out;
}

std::pair<SearchNode, Tiling> reflect_across(const Polygon& P, const SearchNode& node, size_t copy, size_t side) {
  const Motion& m = node.motions.at(copy);
  Point p = m.apply(P.vertices()[side]);
  Rational phi = m.apply_direction(P.edges()[side].direction.multiple).mod(1);
  SearchNode next = node;
  next.motions.push_back(m.reflected(p, phi));
  Tiling t = verify_motions(P, next.motions);
  for (const auto& [c, k] : next.committed)
    if (!t.sides[c][k].external()) throw DomainError("a committed side became internal");
  return {std::move(next), std::move(t)};
}

namespace {

long ramification(long k, long n0) { return k / gcd_long(k, n0); }

struct BoundaryPoint {
  long image;
  Rational alpha;
  long k;
  bool final;
};

std::vector<BoundaryPoint> boundary_points(const SearchContext& ctx, const SearchNode& node, const Tiling& t) {
  const Polygon& P = ctx.base;
  size_t n = P.size();
  std::vector<BoundaryPoint> out;
  for (const auto& tp : t.points) {
    if (tp.interior) continue;
    bool final = true;
    for (const auto& [c, j] : tp.corners)
      for (size_t k : {j, (j + n - 1) % n})
        if (t.sides[c][k].external() && !node.committed.count({c, k})) final = false;
    auto [c0, j0] = tp.corners.front();
    long image = ctx.surface.point_class(node.motions[c0].label(P), static_cast<long>(j0));
    out.push_back({image, P.angles()[j0].multiple, static_cast<long>(tp.corners.size()), final});
  }
  return out;
}

// Reflections in the lines of committed sides, closed under products.
std::vector<Dihedral> committed_group(const SearchContext& ctx, const SearchNode& node) {
  const Polygon& P = ctx.base;
  long N = P.N();
  std::vector<bool> seen(2 * N, false);
  std::vector<Dihedral> gens, group = {Dihedral::identity(N)};
  seen[0] = true;
  for (const auto& [c, k] : node.committed) {
    Dihedral g = node.motions[c].label(P);
    gens.push_back(g * P.side_reflection(k) * g.inverse());
  }
  for (size_t i = 0; i < group.size(); ++i)
    for (const auto& s : gens) {
      Dihedral h = group[i] * s;
      if (!seen[h.ordinal()]) {
        seen[h.ordinal()] = true;
        group.push_back(h);
      }
    }
  return group;
}

// Some multiplicity k' >= k keeps the point compatible with a cover branched only over z.
bool point_feasible(const SearchContext& ctx, const BoundaryPoint& p, long z, SearchMode mode) {
  long n0 = p.alpha.den_long();
  long kmax = p.final ? p.k : (Rational(2) / p.alpha).floor().num_long();
  for (long k = p.k; k <= kmax; ++k) {
    Rational v = Rational(k) * p.alpha;
    if (v == Rational(2)) return true;
    if (mode == SearchMode::intermediate) {
      if (ramification(k, n0) == 1 || !ctx.candidate[p.image]) return true;
      continue;
    }
    long den = v.den_long();
    if (den % 2 == 0 || ctx.stab_rotations[z] % den != 0) continue;
    if (p.image == z || ramification(k, n0) == 1) return true;
  }
  return false;
}

}  // namespace

std::optional<std::string> prune_reason(const SearchContext& ctx, const SearchNode& node, const Tiling& t,
                                        SearchMode mode, long max_copies) {
  if (static_cast<long>(node.motions.size()) > max_copies) return "copy_bound";
  std::vector<BoundaryPoint> pts = boundary_points(ctx, node, t);

  if (mode == SearchMode::intermediate) {
    for (const auto& p : pts) {
      if (!p.final) continue;
      Rational v = Rational(p.k) * p.alpha;
      if (v > Rational(1) && v.den_long() % 2 == 0) return "reflex_even_angle";
      if (ramification(p.k, p.alpha.den_long()) > 1 && ctx.candidate[p.image]) return "nonperiodic_branch_point";
    }
    for (const auto& p : pts)
      if (!point_feasible(ctx, p, -1, mode)) return "angle_budget";
    return std::nullopt;
  }

  std::vector<Dihedral> G = committed_group(ctx, node);
  long N = ctx.base.N();
  if (N % 2 == 0 && std::find(G.begin(), G.end(), Dihedral::rotation(N, N / 2)) != G.end())
    return "minus_id_in_G_Q";
  std::vector<long> zs;
  for (size_t z = 0; z < ctx.candidate.size(); ++z) {
    if (!ctx.candidate[z] || ctx.surface.cone_points()[z].source_vertex < 0) continue;
    bool fixed = std::all_of(G.begin(), G.end(),
                             [&](const Dihedral& h) { return ctx.surface.act(h, static_cast<long>(z)) == static_cast<long>(z); });
    if (fixed) zs.push_back(static_cast<long>(z));
  }
  if (zs.empty()) return "branch_point_not_fixed";

  std::set<long> branched;
  for (const auto& p : pts)
    if (p.final && ramification(p.k, p.alpha.den_long()) > 1) branched.insert(p.image);
  if (branched.size() > 1) return "two_branch_points";
  if (branched.size() == 1 && !ctx.candidate[*branched.begin()]) return "periodic_branch_point";

  for (long z : zs) {
    if (branched.size() == 1 && *branched.begin() != z) continue;
    if (std::all_of(pts.begin(), pts.end(), [&](const BoundaryPoint& p) { return point_feasible(ctx, p, z, mode); }))
      return std::nullopt;
  }
  return "angle_budget";
}

namespace {

struct Trial {
  std::optional<std::string> external, internal;  // prune tag, empty when the option survives
};

class Engine {
 public:
  Engine(const SearchContext& ctx, SearchMode mode, long max_copies, long budget, SearchReport& report)
      : ctx_(ctx), mode_(mode), max_copies_(max_copies), budget_(budget), report_(report) {}

  void run() {
    SearchNode root{{Motion{false, Rational(0), Point()}}, {}};
    Tiling t = verify_motions(ctx_.base, root.motions);
    if (auto tag = prune_reason(ctx_, root, t, mode_, max_copies_)) {
      prune(*tag, root, t);
      return;
    }
    visit(std::move(root), std::move(t), {});
  }

  std::vector<std::pair<SearchNode, Tiling>> complete;  // surviving complete tilings
  bool budget_exceeded = false;

 private:
  const SearchContext& ctx_;
  SearchMode mode_;
  long max_copies_, budget_;
  SearchReport& report_;
  std::set<std::string> visited_, recorded_;

  void prune(const std::string& tag, const SearchNode& node, const Tiling& t) {
    ++report_.prunes[tag];
    if (!undecided_sides(node, t).empty() && tag != "infinite_forcing" && tag != "two_branch_points") return;
    std::string key = canonical_key(ctx_, node);
    if (recorded_.insert(tag + "|" + key).second) report_.rejected.push_back({tag, {}, node, t.outline, key});
  }

  Trial trial(const SearchNode& node, const Tiling& t, size_t c, size_t k, std::optional<std::pair<SearchNode, Tiling>>* grown) {
    Trial r;
    SearchNode ext = node;
    ext.committed.insert({c, k});
    r.external = prune_reason(ctx_, ext, t, mode_, max_copies_);
    if (r.external && undecided_sides(ext, t).empty()) prune(*r.external, ext, t);
    if (static_cast<long>(node.motions.size()) + 1 > max_copies_) {
      r.internal = "copy_bound";
      return r;
    }
    try {
      auto next = reflect_across(ctx_.base, node, c, k);
      r.internal = prune_reason(ctx_, next.first, next.second, mode_, max_copies_);
      if (!r.internal && grown) *grown = std::move(next);
    } catch (const DomainError&) {
      r.internal = "no_room";
    }
    return r;
  }

  // Newest copy and the copies sharing a vertex with it, with side states and
  // vertex multiplicities, up to congruence.
  std::string local_signature(const SearchNode& node, const Tiling& t) {
    size_t last = node.motions.size() - 1, n = ctx_.base.size();
    std::vector<std::vector<size_t>> mult(node.motions.size(), std::vector<size_t>(n, 0));
    std::set<size_t> window = {last};
    for (const auto& tp : t.points) {
      bool touches = false;
      for (const auto& [c, j] : tp.corners) {
        mult[c][j] = tp.corners.size() + (tp.interior ? 100 : 0);
        touches = touches || c == last;
      }
      if (touches)
        for (const auto& cj : tp.corners) window.insert(cj.first);
    }
    std::vector<Motion> ms;
    std::vector<CopyDecoration> deco;
    for (size_t c : window) {
      ms.push_back(node.motions[c]);
      CopyDecoration d{std::vector<std::string>(n), std::vector<std::string>(n)};
      for (size_t k = 0; k < n; ++k) {
        d.side[k] = !t.sides[c][k].external() ? "i" : node.committed.count({c, k}) ? "x" : "u";
        d.vertex[k] = std::to_string(mult[c][k]);
      }
      deco.push_back(std::move(d));
    }
    return canonical_with(ms, deco, ctx_.symmetries);
  }

  void visit(SearchNode node, Tiling t, std::vector<std::pair<std::string, size_t>> history) {
    // forced moves
    for (;;) {
      if (report_.nodes + report_.duplicates >= budget_) {
        budget_exceeded = true;
        return;
      }
      auto open = undecided_sides(node, t);
      bool moved = false;
      for (const auto& [c, k] : open) {
        std::optional<std::pair<SearchNode, Tiling>> grown;
        Trial r = trial(node, t, c, k, &grown);
        if (r.external && r.internal) {
          prune(*r.external, node, t);
          return;
        }
        if (r.external) {
          ++report_.forced["internal:" + *r.external];
          node = std::move(grown->first);
          t = std::move(grown->second);
          std::string sig = local_signature(node, t);
          for (const auto& [s, copies] : history)
            if (s == sig && copies < node.motions.size()) {
              prune("infinite_forcing", node, t);
              return;
            }
          history.push_back({sig, node.motions.size()});
          moved = true;
          break;
        }
        if (r.internal) {
          ++report_.forced["external:" + *r.internal];
          node.committed.insert({c, k});
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }

    if (!visited_.insert(canonical_key(ctx_, node)).second) {
      ++report_.duplicates;
      return;
    }
    ++report_.nodes;
    auto open = undecided_sides(node, t);
    if (open.empty()) {
      ++report_.terminals;
      complete.push_back({node, t});
      return;
    }
    auto [c, k] = open.front();
    {
      try {
        auto next = reflect_across(ctx_.base, node, c, k);
        if (auto tag = prune_reason(ctx_, next.first, next.second, mode_, max_copies_))
          prune(*tag, next.first, next.second);
        else
          visit(std::move(next.first), std::move(next.second), history);
      } catch (const DomainError&) {
        ++report_.prunes["no_room"];
      }
    }
    SearchNode ext = node;
    ext.committed.insert({c, k});
    if (auto tag = prune_reason(ctx_, ext, t, mode_, max_copies_))
      prune(*tag, ext, t);
    else
      visit(std::move(ext), std::move(t), std::move(history));
  }
};

void judge_complete(const SearchContext& ctx, Engine& engine, SearchReport& report, bool& unknown) {
  for (auto& [node, t] : engine.complete) {
    CoverAnalysis a = analyze_cover(t);
    AppropriateVerdict v = appropriate_verdict(t, a, ctx.verdicts, ctx.info);
    if (v.appropriate == Appropriate::yes && !report.candidate) report.candidate = t;
    if (v.appropriate == Appropriate::unknown) unknown = true;
    if (v.appropriate != Appropriate::yes)
      report.rejected.push_back({"verdict", v.reasons, node, t.outline, canonical_key(ctx, node)});
  }
}

void merge(SearchReport& into, const SearchReport& from) {
  into.nodes += from.nodes;
  into.duplicates += from.duplicates;
  into.terminals += from.terminals;
  for (const auto& [k, v] : from.prunes) into.prunes[k] += v;
  for (const auto& [k, v] : from.forced) into.forced[k] += v;
  into.rejected.insert(into.rejected.end(), from.rejected.begin(), from.rejected.end());
  into.notes.insert(into.notes.end(), from.notes.begin(), from.notes.end());
  if (!into.candidate && from.candidate) into.candidate = from.candidate;
}

std::string outcome_of(bool candidate, bool unknown, bool budget) {
  if (candidate) return "candidate";
  return unknown || budget ? "inconclusive" : "none_found";
}

}  // namespace

SearchReport search_base(const SearchContext& ctx, SearchMode mode, long max_copies, long node_budget) {
  if (max_copies < 1) throw DomainError("the copy bound must be at least 1");
  SearchReport report;
  report.options.max_copies = max_copies;
  report.options.node_budget = node_budget;
  Engine engine(ctx, mode, max_copies, node_budget, report);
  engine.run();
  bool unknown = false;
  if (mode == SearchMode::appropriate) judge_complete(ctx, engine, report, unknown);
  if (engine.budget_exceeded) report.notes.push_back("node budget exceeded");
  report.outcome = outcome_of(report.candidate.has_value(), unknown, engine.budget_exceeded);
  return report;
}

SearchReport search_appropriate(const CatalogEntry& entry, const SearchOptions& options) {
  if (options.cls != 1 && options.cls != 2) throw DomainError("class must be 1 or 2");
  BaseInfo info{entry.facts.lattice, entry.facts.square_tiled};
  SearchContext ctx = make_search_context(entry.polygon, info);

  SearchReport report;
  if (options.cls == 1) {
    report = search_base(ctx, SearchMode::appropriate, options.max_copies, options.node_budget);
  } else {
    bool unknown = false, budget = false;
    Engine engine(ctx, SearchMode::intermediate, options.intermediate_copies, options.node_budget, report);
    engine.run();
    budget = engine.budget_exceeded;
    std::set<std::string> seen;
    for (const auto& [node, t] : engine.complete) {
      if (t.size() < 2) continue;
      CoverAnalysis a = analyze_cover(t);
      bool periodic_only = std::all_of(a.branch_locus.begin(), a.branch_locus.end(),
                                       [&](long z) { return !ctx.candidate[z]; });
      if (!periodic_only) continue;
      std::string key = t.outline.normalized().key();
      if (!seen.insert(key).second) continue;
      ++report.intermediates;
      SearchContext sub = make_search_context(t.outline.normalized(), info);
      SearchReport r = search_base(sub, SearchMode::appropriate, options.max_copies, options.node_budget);
      for (auto& rej : r.rejected) rej.tag = "over " + key + ": " + rej.tag;
      merge(report, r);
      unknown = unknown || r.outcome == "inconclusive";
    }
    if (budget) report.notes.push_back("node budget exceeded");
    report.outcome = outcome_of(report.candidate.has_value(), unknown, budget);
  }
  report.family = entry.family;
  report.n = entry.n;
  report.options = options;
  return report;
}

}  // namespace flat
