#pragma once

#include <string>

#include "repgeo/representation.hpp"

namespace repgeo::cli {

/// Representation files are JSON:
///   {"p": 3, "group_dim": 1, "action_dim": 1,
///    "generators": [{"group": [[2]], "action": [[2]]}]}
/// Entries are integers, reduced mod p on load. Errors carry code "rep_file".
FiniteRepresentation parse_representation(const std::string& text, std::size_t bound);
FiniteRepresentation load_representation(const std::string& path, std::size_t bound);

/// Single-line JSON with entries in [0, p).
std::string representation_to_json(const FiniteRepresentation& rep);

}  // namespace repgeo::cli
