#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "flat/catalog.hpp"
#include "flat/covers.hpp"
#include "flat/search.hpp"

namespace flat {

using Json = nlohmann::ordered_json;

// Exact expression plus a 50-digit decimal. Reading accepts the object, an
// expression string or an integer.
Json to_json(const Real& x);
Real real_from_json(const Json& j);
Json to_json(const Point& z);
Point point_from_json(const Json& j);

// Reading accepts "edges" or "triangle" (three angles, optional "unit").
Json to_json(const Polygon& P);
Polygon polygon_from_json(const Json& j);

Json to_json(const TranslationSurface& M);
TranslationSurface surface_from_json(const Json& j);

// Motions are always written; reading replays "motions" if present, else "steps".
Json to_json(const Tiling& t);
Tiling tiling_from_json(const Json& j);

Json to_json(const Topology& t);
Json to_json(const CoverAnalysis& a);
Json to_json(const AppropriateVerdict& v);
Json to_json(const PeriodicityVerdict& v);
Json to_json(const Decomposition& D);
Json to_json(const CatalogEntry& c);
Json to_json(const SearchReport& r);

std::string surface_svg(const TranslationSurface& M);
std::string tiling_svg(const Tiling& t);
// Faces of M with the saddle connections of D drawn on top.
std::string decomposition_svg(const TranslationSurface& M, const Decomposition& D);

// Writes to a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
Json read_json_file(const std::filesystem::path& path);

}  // namespace flat
