#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "maxsurf/weierstrass.hpp"

namespace maxsurf {

using Json = nlohmann::ordered_json;

/// { "kind", "domain", "g", "phi3", "basepoint": [re, im],
///   "base_value": [x1, x2, x3] }
Json surface_to_json(const WeierstrassData& data);

/// Parses and validates a surface definition; throws std::invalid_argument,
/// expr::ParseError, or the weierstrass validation errors.
WeierstrassData surface_from_json(const Json& j);

/// Resolves a catalog name or a JSON file path to validated data.
WeierstrassData load_surface(const std::string& name_or_path);

/// OBJ with v, vn (Euclidean-normalized normals; zero records at singular
/// vertices), and quad f records (v//vn).
void write_obj(std::ostream& out, const SurfaceMesh& mesh);

}  // namespace maxsurf
