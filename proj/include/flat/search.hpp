#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flat/catalog.hpp"
#include "flat/covers.hpp"

namespace flat {

// Partial tiling: copies placed so far plus external sides fixed as sides of Q.
// Every other external side is undecided.
struct SearchNode {
  std::vector<Motion> motions;
  std::set<std::pair<size_t, size_t>> committed;  // (copy, side)
};

enum class SearchMode {
  appropriate,   // Q over P branched over a single non-periodic point
  intermediate,  // Pbar over P branched only over periodic points
};

// Motion taking the polygon onto itself; vertex k goes to vertex vertex_map[k].
struct PolygonSymmetry {
  Motion motion;
  std::vector<size_t> vertex_map, side_map;
};

std::vector<PolygonSymmetry> polygon_symmetries(const Polygon& P);

// Per-base data shared by all nodes.
struct SearchContext {
  Polygon base;
  TranslationSurface surface;
  std::vector<PeriodicityVerdict> verdicts;  // by point class
  BaseInfo info;
  std::vector<bool> candidate;  // point class may be a branch point (not known periodic)
  std::vector<long> stab_rotations;  // rotations of G_P fixing each point class
  std::vector<PolygonSymmetry> symmetries;
};

SearchContext make_search_context(const Polygon& P, const BaseInfo& info = {});
// With verdicts supplied, e.g. from catalog facts already certified.
SearchContext make_search_context(const Polygon& P, std::vector<PeriodicityVerdict> verdicts,
                                  const BaseInfo& info = {});

// Rule tag that rules out every completion of the node, if any.
std::optional<std::string> prune_reason(const SearchContext& ctx, const SearchNode& node, const Tiling& t,
                                        SearchMode mode, long max_copies);

// Invariant under congruence of the whole configuration, including
// relabelling a copy by a symmetry of the base.
std::string canonical_key(const SearchContext& ctx, const SearchNode& node);

// External sides of t that are not committed.
std::vector<std::pair<size_t, size_t>> undecided_sides(const SearchNode& node, const Tiling& t);

// Node with a copy reflected across (copy, side); throws DomainError when the union is not a tiling
// or a committed side would become internal.
std::pair<SearchNode, Tiling> reflect_across(const Polygon& P, const SearchNode& node, size_t copy, size_t side);

struct RejectedNode {
  std::string tag;
  std::vector<std::string> reasons;  // verdict reasons for complete tilings
  SearchNode node;
  Polygon outline;
  std::string key;
};

struct SearchOptions {
  long max_copies = 6;
  int cls = 1;
  long intermediate_copies = 4;  // bound on copies of P in Pbar for the second class
  long node_budget = 100000;
};

struct SearchReport {
  std::string family;
  std::optional<long> n;
  SearchOptions options;
  std::string outcome;  // none_found | candidate | inconclusive
  std::optional<Tiling> candidate;
  long nodes = 0, duplicates = 0, terminals = 0;
  std::map<std::string, long> prunes;
  std::map<std::string, long> forced;
  std::vector<RejectedNode> rejected;
  std::vector<std::string> notes;
  long intermediates = 0;  // Pbar polygons explored (second class)
};

// Search over an arbitrary base polygon.
SearchReport search_base(const SearchContext& ctx, SearchMode mode, long max_copies, long node_budget);

SearchReport search_appropriate(const CatalogEntry& entry, const SearchOptions& options);

}  // namespace flat
