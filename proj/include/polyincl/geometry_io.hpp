#pragma once

#include <string>

#include "json.hpp"
#include "polyincl/geometry.hpp"

namespace polyincl {

/// {"dim", "name", "vertices", "halfspaces", "precision_digits"}; coordinates as
/// decimal strings at the polytope's precision.
nlohmann::json polytope_to_json(const Polytope& p);

/// Inverse of polytope_to_json. Either representation may be missing, but not
/// both. Throws std::invalid_argument on schema errors.
Polytope polytope_from_json(const nlohmann::json& j);

/// Standard OFF (counts line, vertex lines, facet index lines), 17 significant
/// digits. 2D bodies are written in the z = 0 plane as a single face.
std::string polytope_to_off(const Polytope& p);

}  // namespace polyincl
